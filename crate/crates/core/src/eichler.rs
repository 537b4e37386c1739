//! Quadratic-residue symbols and the discriminant search for quadratic
//! fields embedding optimally into an indefinite quaternion order.
//!
//! Given the algebra discriminant `D`, the order index `M` and an odd prime
//! `p` dividing neither, we look for a non-square `d > 0` with
//! `(d/p) = 1`, `(d/l) = -1` for every odd `l | D`, and `d = 5 mod 8` when
//! `2 | D`. `M` only enters through the hypothesis `p` does not divide `M`.

use crate::zmod::arith::{factorize, is_prime, pow_mod};
use crate::{Error, Result};

pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// Euler's criterion: `a^((p-1)/2) mod p`, as `-1`, `0` or `1`.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    Ok(match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuaternionInput {
    pub disc: u64,
    pub index: u64,
    pub p: u64,
}

impl QuaternionInput {
    /// `disc` must be squarefree with an even number of prime factors
    /// (`1` is the split algebra), `p` odd prime dividing neither `disc`
    /// nor `index`.
    pub fn new(disc: u64, index: u64, p: u64) -> Result<Self> {
        if disc == 0 || index == 0 {
            return Err(Error::InvalidParameters(
                "discriminant and index must be positive".into(),
            ));
        }
        let primes = factorize(disc);
        if primes.iter().any(|&(_, k)| k > 1) {
            return Err(Error::InvalidParameters(format!(
                "discriminant {disc} is not squarefree"
            )));
        }
        if !primes.len().is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!(
                "discriminant {disc} has an odd number of prime factors"
            )));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if disc.is_multiple_of(p) {
            return Err(Error::Divides { p, what: "D" });
        }
        if index.is_multiple_of(p) {
            return Err(Error::Divides { p, what: "M" });
        }
        Ok(Self { disc, index, p })
    }

    pub fn odd_ramified_primes(&self) -> Vec<u64> {
        factorize(self.disc)
            .into_iter()
            .map(|(l, _)| l)
            .filter(|&l| l != 2)
            .collect()
    }

    pub fn two_ramified(&self) -> bool {
        self.disc.is_multiple_of(2)
    }
}

/// One condition checked on a candidate `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    SquareModP { p: u64 },
    NonSquareMod { l: u64 },
    FiveModEight,
    NotASquare,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::SquareModP { p } => write!(f, "(d/{p}) = 1"),
            Condition::NonSquareMod { l } => write!(f, "(d/{l}) = -1"),
            Condition::FiveModEight => write!(f, "d = 5 mod 8"),
            Condition::NotASquare => write!(f, "d is not a square"),
        }
    }
}

pub fn conditions(input: &QuaternionInput) -> Vec<Condition> {
    let mut out = vec![Condition::SquareModP { p: input.p }];
    out.extend(
        input
            .odd_ramified_primes()
            .into_iter()
            .map(|l| Condition::NonSquareMod { l }),
    );
    if input.two_ramified() {
        out.push(Condition::FiveModEight);
    }
    out.push(Condition::NotASquare);
    out
}

pub fn check_condition(d: u64, c: &Condition) -> bool {
    match *c {
        Condition::SquareModP { p } => legendre_symbol(d as i64, p) == Ok(1),
        Condition::NonSquareMod { l } => legendre_symbol(d as i64, l) == Ok(-1),
        Condition::FiveModEight => d % 8 == 5,
        Condition::NotASquare => !is_square(d),
    }
}

pub fn is_square(d: u64) -> bool {
    let r = (d as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s.checked_mul(s) == Some(d))
}

/// Smallest `d <= bound` meeting every condition.
///
/// The admissible residues modulo `N = p * odd(D)` (times 8 when `2 | D`)
/// are fixed first; the progressions `r, r + N, r + 2N, ...` are then
/// scanned together in increasing order for a non-square.
pub fn find_discriminant_d(input: &QuaternionInput, bound: u64) -> Result<u64> {
    let odd = input.odd_ramified_primes();
    let mut modulus = input.p * odd.iter().product::<u64>();
    if input.two_ramified() {
        modulus *= 8;
    }
    let residue_ok = |r: u64| {
        legendre_symbol(r as i64, input.p) == Ok(1)
            && odd.iter().all(|&l| legendre_symbol(r as i64, l) == Ok(-1))
            && (!input.two_ramified() || r % 8 == 5)
    };
    let residues: Vec<u64> = (1..=modulus).filter(|&r| residue_ok(r % modulus)).collect();
    if residues.is_empty() {
        return Err(Error::NoSolutionBelowBound(bound));
    }

    let conds = conditions(input);
    let mut base = 0u64;
    while base <= bound {
        for &r in &residues {
            let d = base + r;
            if d > bound {
                return Err(Error::NoSolutionBelowBound(bound));
            }
            if !is_square(d) {
                debug_assert!(conds.iter().all(|c| check_condition(d, c)));
                if !conds.iter().all(|c| check_condition(d, c)) {
                    return Err(Error::InvalidParameters(format!(
                        "candidate {d} failed re-verification"
                    )));
                }
                return Ok(d);
            }
        }
        base = base
            .checked_add(modulus)
            .ok_or(Error::Overflow("discriminant search"))?;
    }
    Err(Error::NoSolutionBelowBound(bound))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl std::fmt::Display for SplitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SplitType::Split => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified => "ramified",
        })
    }
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(d: i64) -> i64 {
    let sign = d.signum();
    let core: u64 = factorize(d.unsigned_abs())
        .into_iter()
        .filter(|&(_, k)| k % 2 == 1)
        .map(|(p, _)| p)
        .product();
    sign * core as i64
}

/// Behaviour of the prime `q` in `Q(sqrt d)`.
pub fn split_type(d: i64, q: u64) -> Result<SplitType> {
    if d == 0 || (d > 0 && is_square(d as u64)) {
        return Err(Error::InvalidParameters(format!("{d} is a square")));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let d0 = squarefree_part(d);
    if q == 2 {
        return Ok(match d0.rem_euclid(8) {
            1 => SplitType::Split,
            5 => SplitType::Inert,
            _ => SplitType::Ramified,
        });
    }
    Ok(match legendre_symbol(d0, q)? {
        0 => SplitType::Ramified,
        1 => SplitType::Split,
        _ => SplitType::Inert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(4, 5), Ok(1));
        assert_eq!(legendre_symbol(0, 7), Ok(0));
        assert_eq!(legendre_symbol(2, 3), Ok(-1));
        assert_eq!(legendre_symbol(-1, 5), Ok(1));
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 9).is_err());
    }

    #[test]
    fn legendre_matches_square_census() {
        for p in (3..100).filter(|&p| is_prime(p)) {
            let squares: std::collections::BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    fn brute_force_d(input: &QuaternionInput, limit: u64) -> Option<u64> {
        let conds = conditions(input);
        (1..limit).find(|&d| conds.iter().all(|c| check_condition(d, c)))
    }

    #[test]
    fn discriminant_six_prime_five() {
        let input = QuaternionInput::new(6, 1, 5).unwrap();
        let d = find_discriminant_d(&input, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(d, 29);
        assert_eq!(brute_force_d(&input, 200), Some(29));
        assert_eq!(split_type(d as i64, 5).unwrap(), SplitType::Split);
    }

    #[test]
    fn split_algebra_prime_five() {
        let input = QuaternionInput::new(1, 1, 5).unwrap();
        assert_eq!(find_discriminant_d(&input, DEFAULT_SEARCH_BOUND).unwrap(), 6);
    }

    #[test]
    fn hypothesis_violations() {
        assert_eq!(QuaternionInput::new(6, 1, 3), Err(Error::Divides { p: 3, what: "D" }));
        assert_eq!(QuaternionInput::new(6, 10, 5), Err(Error::Divides { p: 5, what: "M" }));
        assert!(QuaternionInput::new(6, 1, 2).is_err());
        assert!(QuaternionInput::new(12, 1, 5).is_err());
        assert!(QuaternionInput::new(30, 1, 7).is_err());
    }

    #[test]
    fn small_bound_reports_failure() {
        let input = QuaternionInput::new(6, 1, 5).unwrap();
        assert_eq!(find_discriminant_d(&input, 28), Err(Error::NoSolutionBelowBound(28)));
    }

    #[test]
    fn search_agrees_with_brute_force() {
        for (disc, p) in [
            (6, 5),
            (6, 7),
            (10, 3),
            (10, 7),
            (14, 3),
            (15, 7),
            (21, 5),
            (1, 3),
            (1, 7),
            (35, 3),
        ] {
            let input = QuaternionInput::new(disc, 1, p).unwrap();
            let d = find_discriminant_d(&input, DEFAULT_SEARCH_BOUND).unwrap();
            assert_eq!(Some(d), brute_force_d(&input, d + 1), "D={disc} p={p}");
            assert_eq!(split_type(d as i64, p).unwrap(), SplitType::Split);
        }
    }

    #[test]
    fn split_type_examples() {
        assert_eq!(split_type(29, 5).unwrap(), SplitType::Split);
        assert_eq!(split_type(29, 29).unwrap(), SplitType::Ramified);
        assert_eq!(split_type(5, 3).unwrap(), SplitType::Inert);
        assert_eq!(split_type(17, 2).unwrap(), SplitType::Split);
        assert_eq!(split_type(5, 2).unwrap(), SplitType::Inert);
        assert_eq!(split_type(3, 2).unwrap(), SplitType::Ramified);
        // 12 = 4 * 3: the field is Q(sqrt 3)
        assert_eq!(split_type(12, 11).unwrap(), split_type(3, 11).unwrap());
        assert!(split_type(16, 3).is_err());
    }

    proptest! {
        #[test]
        fn legendre_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, pi in 0usize..8) {
            let p = [3u64, 5, 7, 11, 13, 101, 997, 7919][pi];
            let lhs = legendre_symbol(a * b, p).unwrap();
            let rhs = legendre_symbol(a, p).unwrap() * legendre_symbol(b, p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
