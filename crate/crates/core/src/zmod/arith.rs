//! Scalar arithmetic on residues. Intermediates go through `u128`/`i128`, so
//! every modulus below `2^63` is exact.

use crate::{Error, Result};

pub const MAX_MODULUS: u64 = 1 << 63;

pub fn check_modulus(m: u64) -> Result<()> {
    if (2..MAX_MODULUS).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(m))
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd(a as i128, m as i128);
    (g == 1).then(|| reduce_signed(s, m))
}

pub fn is_unit(a: u64, m: u64) -> bool {
    gcd(a % m, m) == 1
}

/// A unit `w` with `w * a == gcd(a, m) (mod m)`.
pub fn unit_normalizer(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        return 1;
    }
    let d = gcd(a, m);
    let (a1, m1) = (a / d, m / d);
    let mut w = inv_mod(a1 % m1, m1).unwrap_or(0);
    if w == 0 {
        w = 1;
    }
    // Lift the inverse mod m/d to a unit mod m; some lift in the residue
    // class always is one.
    while gcd(w, m) != 1 {
        w += m1;
    }
    w % m
}

/// Valuation of `a` at `p`, with `v(0) = None`.
pub fn valuation(mut a: u64, p: u64) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    Some(v)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_hits_gcd() {
        for m in 2..60u64 {
            for a in 0..m {
                let w = unit_normalizer(a, m);
                assert!(is_unit(w, m), "w={w} m={m}");
                let expected = if a == 0 { 0 } else { gcd(a, m) };
                assert_eq!(mul_mod(w, a, m), expected % m, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert!(g >= 0);
            }
        }
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(valuation(54, 3), Some(3));
    }
}
