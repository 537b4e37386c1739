//! Integer Smith normal form and the structure of finite quotients.

use super::arith::{factorize, gcd, reduce_signed};
use super::howell::{left_kernel, SubmoduleBasis};
use crate::{Error, Result};

/// A finite abelian group `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`
/// and every `d_i >= 2`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianStructure {
    invariant_factors: Vec<u64>,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Validates the divisibility chain.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameters("invariant factors must be >= 2".into()));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidParameters(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(Self { invariant_factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Number of elements killed by `k`.
    pub fn torsion_count(&self, k: u64) -> u128 {
        self.invariant_factors.iter().map(|&d| gcd(d, k) as u128).product()
    }

    /// Prime-power cyclic factors, sorted ascending.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .invariant_factors
            .iter()
            .flat_map(|&d| factorize(d).into_iter().map(|(p, k)| p.pow(k)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Structure of a direct sum.
    pub fn direct_sum(parts: &[AbelianStructure]) -> Self {
        let divisors: Vec<u64> = parts.iter().flat_map(|s| s.elementary_divisors()).collect();
        Self::from_elementary_divisors(&divisors)
    }

    fn from_elementary_divisors(divisors: &[u64]) -> Self {
        // group prime powers by prime, then multiply the largest of each
        // prime together, the second largest together, and so on
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for &q in divisors {
            let p = factorize(q)[0].0;
            match by_prime.iter_mut().find(|(pp, _)| *pp == p) {
                Some((_, v)) => v.push(q),
                None => by_prime.push((p, vec![q])),
            }
        }
        let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        for (_, v) in by_prime.iter_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        let mut factors: Vec<u64> = (0..len)
            .map(|i| by_prime.iter().map(|(_, v)| v.get(i).copied().unwrap_or(1)).product())
            .collect();
        factors.reverse();
        Self {
            invariant_factors: factors,
        }
    }
}

impl std::fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Diagonal of the Smith form of an integer matrix plus the inverse of the
/// accumulated column transform.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i128>,
    /// Rows are the new basis of `Z^cols` in which the row lattice is
    /// diagonal.
    pub basis: Vec<Vec<i128>>,
}

fn checked_axpy(dst: &mut [i128], q: i128, src: &[i128]) -> Result<()> {
    // dst -= q * src
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = q
            .checked_mul(s)
            .and_then(|x| d.checked_sub(x))
            .ok_or(Error::Overflow("smith normal form"))?;
    }
    Ok(())
}

/// Smith normal form of the row lattice of `mat` (`cols` columns).
pub fn smith_normal_form(mut mat: Vec<Vec<i128>>, cols: usize) -> Result<SmithForm> {
    let rows = mat.len();
    let mut basis: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = mat[i][j];
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < mat[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Ok(SmithForm { diagonal, basis });
            };
            mat.swap(t, bi);
            if bj != t {
                for row in mat.iter_mut() {
                    row.swap(t, bj);
                }
                basis.swap(t, bj);
            }
            let pivot = mat[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = mat[i][t].div_euclid(pivot);
                if q != 0 {
                    let src = mat[t].clone();
                    checked_axpy(&mut mat[i], q, &src)?;
                }
                clean &= mat[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = mat[t][j].div_euclid(pivot);
                if q != 0 {
                    // column j -= q * column t; the basis row t absorbs +q * row j
                    for row in mat.iter_mut() {
                        row[j] = q
                            .checked_mul(row[t])
                            .and_then(|x| row[j].checked_sub(x))
                            .ok_or(Error::Overflow("smith normal form"))?;
                    }
                    let src = basis[j].clone();
                    checked_axpy(&mut basis[t], -q, &src)?;
                }
                clean &= mat[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| mat[i][j] % pivot != 0));
            match offender {
                Some(i) => {
                    let src = mat[i].clone();
                    checked_axpy(&mut mat[t], -1, &src)?;
                }
                None => break,
            }
        }
        diagonal.push(mat[t][t].abs());
    }
    Ok(SmithForm { diagonal, basis })
}

/// Structure of `ambient / sub` together with a generator (a vector of the
/// ambient span) for each invariant factor, in the same order.
pub fn quotient_with_generators(
    ambient: &SubmoduleBasis,
    sub: &SubmoduleBasis,
) -> Result<(AbelianStructure, Vec<Vec<u64>>)> {
    if !sub.is_subset_of(ambient)? {
        return Err(Error::NotContained);
    }
    let m = ambient.modulus();
    let k = ambient.rows().len();
    if k == 0 {
        return Ok((AbelianStructure::trivial(), Vec::new()));
    }
    // Relations among the ambient generators a_1..a_k modulo `sub`: the
    // left kernel of [a; s], projected to its first k coordinates.
    let stacked: Vec<Vec<u64>> = ambient.rows().iter().chain(sub.rows()).cloned().collect();
    let relations = left_kernel(&stacked, m, ambient.ambient_rank())?;
    let mut lattice: Vec<Vec<i128>> = relations
        .rows()
        .iter()
        .map(|r| r[..k].iter().map(|&x| x as i128).collect())
        .collect();
    for i in 0..k {
        lattice.push((0..k).map(|j| if i == j { m as i128 } else { 0 }).collect());
    }
    let smith = smith_normal_form(lattice, k)?;

    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, &d) in smith.diagonal.iter().enumerate() {
        if d == 1 {
            continue;
        }
        let coeffs: Vec<u64> = smith.basis[i].iter().map(|&c| reduce_signed(c, m)).collect();
        factors.push(d as u64);
        generators.push(ambient.combine(&coeffs));
    }
    Ok((AbelianStructure::new(factors)?, generators))
}

/// Invariant factors of `ambient / sub`.
pub fn quotient_structure(ambient: &SubmoduleBasis, sub: &SubmoduleBasis) -> Result<AbelianStructure> {
    Ok(quotient_with_generators(ambient, sub)?.0)
}

#[cfg(test)]
mod tests {
    use super::super::howell::howell_form;
    use super::*;

    #[test]
    fn z8_mod_index_two() {
        let a = howell_form(&[vec![1]], 8, 1).unwrap();
        let s = howell_form(&[vec![2]], 8, 1).unwrap();
        assert_eq!(quotient_structure(&a, &s).unwrap().invariant_factors(), &[2]);
        assert!(quotient_structure(&a, &a).unwrap().is_trivial());
    }

    #[test]
    fn z9_squared_mod_three_axis() {
        // (Z/9)^2 / <(3, 0)>: cosets of a 3-element subgroup in an
        // 81-element group. Element-order census of the 27 cosets gives
        // 9 elements killed by 3 and 27 killed by 9, i.e. Z/3 + Z/9.
        let a = SubmoduleBasis::full(9, 2).unwrap();
        let s = howell_form(&[vec![3, 0]], 9, 2).unwrap();
        let q = quotient_structure(&a, &s).unwrap();
        assert_eq!(q.invariant_factors(), &[3, 9]);

        let mut killed_by_3 = std::collections::BTreeSet::new();
        for x in 0..9u64 {
            for y in 0..9u64 {
                let (tx, ty) = ((3 * x) % 9, (3 * y) % 9);
                if s.contains(&[tx, ty]).unwrap() {
                    killed_by_3.insert(s.reduce(&[x, y]).unwrap().0);
                }
            }
        }
        assert_eq!(killed_by_3.len() as u128, q.torsion_count(3));
    }

    #[test]
    fn not_contained_is_rejected() {
        let a = howell_form(&[vec![2]], 8, 1).unwrap();
        let s = howell_form(&[vec![1]], 8, 1).unwrap();
        assert_eq!(quotient_structure(&a, &s), Err(Error::NotContained));
    }

    #[test]
    fn smith_of_small_matrix() {
        let s = smith_normal_form(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).unwrap();
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn generators_have_exact_orders() {
        let a = SubmoduleBasis::full(12, 2).unwrap();
        let s = howell_form(&[vec![2, 0], vec![0, 3]], 12, 2).unwrap();
        let (q, gens) = quotient_with_generators(&a, &s).unwrap();
        assert_eq!(q.invariant_factors(), &[6]);
        for (g, &d) in gens.iter().zip(q.invariant_factors()) {
            for k in 1..=d {
                let kg: Vec<u64> = g.iter().map(|&x| (x * k) % 12).collect();
                assert_eq!(s.contains(&kg).unwrap(), k == d, "k={k}");
            }
        }
    }

    #[test]
    fn direct_sum_merges_coprime_parts() {
        let a = AbelianStructure::new(vec![2]).unwrap();
        let b = AbelianStructure::new(vec![3, 9]).unwrap();
        assert_eq!(AbelianStructure::direct_sum(&[a, b]).invariant_factors(), &[3, 18]);
    }
}
