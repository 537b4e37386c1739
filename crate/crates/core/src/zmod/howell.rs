//! Howell normal form of row spans over `Z/mZ`.
//!
//! A Howell basis is an echelon basis whose pivots divide `m`, whose entries
//! above each pivot are reduced modulo that pivot, and which has the Howell
//! property: every element of the span whose first `j` coordinates vanish is
//! a combination of the rows with pivot column `>= j`. Under these
//! conventions the basis is unique, so spans compare by row equality and
//! membership is decided by greedy reduction.

use super::arith::{add_mod, check_modulus, mul_mod, sub_mod, unit_normalizer, xgcd};
use super::matrix::ResidueMatrix;
use crate::{Error, Result};

/// Canonical generating rows of a submodule of `(Z/mZ)^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmoduleBasis {
    modulus: u64,
    ambient_rank: usize,
    rows: Vec<Vec<u64>>,
}

/// Result of [`SubmoduleBasis::membership`]: coefficients on the basis rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub coefficients: Vec<u64>,
}

/// Output of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// A particular solution reduced modulo the kernel, when one exists.
    pub particular: Option<Vec<u64>>,
    pub kernel: SubmoduleBasis,
}

fn combine_rows(work: &mut [Vec<u64>], r: usize, i: usize, coeffs: [i128; 4], m: u64) {
    let [s, t, u, v] = coeffs.map(|c| c.rem_euclid(m as i128) as u64);
    let (head, tail) = work.split_at_mut(i);
    let (top, bottom) = (&mut head[r], &mut tail[0]);
    for (x, y) in top.iter_mut().zip(bottom.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = add_mod(mul_mod(s, a, m), mul_mod(t, b, m), m);
        *y = add_mod(mul_mod(u, a, m), mul_mod(v, b, m), m);
    }
}

fn axpy(target: &mut [u64], q: u64, row: &[u64], m: u64) {
    // target -= q * row
    if q == 0 {
        return;
    }
    for (t, &x) in target.iter_mut().zip(row) {
        *t = sub_mod(*t, mul_mod(q, x, m), m);
    }
}

/// Row-reduces `work` (all rows of length `ncols`, entries in `[0, m)`) into
/// Howell form, returning only the nonzero rows.
fn howell_rows(mut work: Vec<Vec<u64>>, m: u64, ncols: usize) -> Vec<Vec<u64>> {
    work.retain(|row| row.iter().any(|&x| x != 0));
    let mut r = 0;
    for col in 0..ncols {
        if r >= work.len() {
            break;
        }
        for i in r + 1..work.len() {
            let b = work[i][col];
            if b == 0 {
                continue;
            }
            let a = work[r][col];
            if a == 0 {
                work.swap(r, i);
                continue;
            }
            let (g, s, t) = xgcd(a as i128, b as i128);
            let (u, v) = (-(b as i128 / g), a as i128 / g);
            combine_rows(&mut work, r, i, [s, t, u, v], m);
        }
        let a = work[r][col];
        if a == 0 {
            continue;
        }
        let w = unit_normalizer(a, m);
        if w != 1 {
            for x in work[r].iter_mut() {
                *x = mul_mod(*x, w, m);
            }
        }
        let pivot = work[r][col];
        let pivot_row = work[r].clone();
        for row in work.iter_mut().take(r) {
            let q = row[col] / pivot;
            axpy(row, q, &pivot_row, m);
        }
        let ann = m / pivot;
        let extra: Vec<u64> = pivot_row.iter().map(|&x| mul_mod(x, ann, m)).collect();
        if extra.iter().any(|&x| x != 0) {
            work.push(extra);
        }
        r += 1;
    }
    work.truncate(r);
    work
}

/// The unique Howell basis of the span of `rows` in `(Z/mZ)^ambient_rank`.
pub fn howell_form(rows: &[Vec<u64>], modulus: u64, ambient_rank: usize) -> Result<SubmoduleBasis> {
    check_modulus(modulus)?;
    let mut work = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: row.len(),
            });
        }
        work.push(row.iter().map(|&x| x % modulus).collect());
    }
    Ok(SubmoduleBasis {
        modulus,
        ambient_rank,
        rows: howell_rows(work, modulus, ambient_rank),
    })
}

impl SubmoduleBasis {
    pub fn zero(modulus: u64, ambient_rank: usize) -> Result<Self> {
        howell_form(&[], modulus, ambient_rank)
    }

    pub fn full(modulus: u64, ambient_rank: usize) -> Result<Self> {
        let rows: Vec<Vec<u64>> = (0..ambient_rank)
            .map(|i| (0..ambient_rank).map(|j| u64::from(i == j)).collect())
            .collect();
        howell_form(&rows, modulus, ambient_rank)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Pivot column and pivot value of each row.
    pub fn pivots(&self) -> Vec<(usize, u64)> {
        self.rows
            .iter()
            .map(|row| {
                let c = row.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
                (c, row[c])
            })
            .collect()
    }

    /// Number of elements in the span: the product of `m / pivot`.
    pub fn order(&self) -> u128 {
        self.pivots().iter().map(|&(_, p)| (self.modulus / p) as u128).product()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_rank && self.pivots().iter().all(|&(_, p)| p == 1)
    }

    fn check_vector(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Greedy reduction: the canonical representative of `v + span` together
    /// with the coefficients that were subtracted.
    pub fn reduce(&self, v: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
        self.check_vector(v)?;
        let m = self.modulus;
        let mut rem: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let mut coeffs = vec![0; self.rows.len()];
        for (k, (row, (col, pivot))) in self.rows.iter().zip(self.pivots()).enumerate() {
            let q = rem[col] / pivot;
            axpy(&mut rem, q, row, m);
            coeffs[k] = q;
        }
        Ok((rem, coeffs))
    }

    /// Decides whether `v` lies in the span; on success the returned
    /// coefficients reproduce `v` exactly.
    pub fn membership(&self, v: &[u64]) -> Result<Option<Membership>> {
        let (rem, coefficients) = self.reduce(v)?;
        Ok(rem.iter().all(|&x| x == 0).then_some(Membership { coefficients }))
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    /// The linear combination of basis rows with the given coefficients.
    pub fn combine(&self, coefficients: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut out = vec![0; self.ambient_rank];
        for (row, &c) in self.rows.iter().zip(coefficients) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o = add_mod(*o, mul_mod(c, x, m), m);
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<u64>> = self.rows.iter().chain(&other.rows).cloned().collect();
        howell_form(&rows, self.modulus, self.ambient_rank)
    }

    /// Intersection of two spans, read off the Howell form of
    /// `[[A | A], [B | 0]]`: rows with vanishing left half carry `A ∩ B`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.ambient_rank;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus, n);
        }
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for a in &self.rows {
            let mut row = a.clone();
            row.extend_from_slice(a);
            rows.push(row);
        }
        for b in &other.rows {
            let mut row = b.clone();
            row.extend(std::iter::repeat_n(0, n));
            rows.push(row);
        }
        let reduced = howell_rows(rows, self.modulus, 2 * n);
        let tail: Vec<Vec<u64>> = reduced
            .into_iter()
            .filter(|row| row[..n].iter().all(|&x| x == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        howell_form(&tail, self.modulus, n)
    }

    /// Image of the span under the linear map `x -> x * map` where `map`
    /// has `ambient_rank` rows.
    pub fn map_rows(&self, map: &ResidueMatrix) -> Result<Self> {
        if map.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, map.modulus()));
        }
        if map.rows() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: map.rows(),
            });
        }
        let t = map.transpose();
        let rows: Vec<Vec<u64>> = self.rows.iter().map(|r| t.apply(r)).collect();
        howell_form(&rows, self.modulus, map.cols())
    }

    /// Every element of the span, each exactly once.
    ///
    /// Uses the unique representation `sum c_k row_k` with
    /// `0 <= c_k < m / pivot_k` that Howell bases admit.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        let ranges: Vec<u64> = self.pivots().iter().map(|&(_, p)| self.modulus / p).collect();
        let mut out = Vec::new();
        let mut coeffs = vec![0u64; ranges.len()];
        loop {
            out.push(self.combine(&coeffs));
            let mut k = 0;
            loop {
                if k == ranges.len() {
                    return out;
                }
                coeffs[k] += 1;
                if coeffs[k] < ranges[k] {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
        }
    }
}

/// Solves `A x = b` over `Z/mZ`.
///
/// Works on the Howell form of `[A^T | I]`: rows with a pivot in the left
/// block express `b`, rows whose left block vanishes span the kernel.
pub fn solve_linear(a: &ResidueMatrix, b: &[u64]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let m = a.modulus();
    let (nr, nc) = (a.rows(), a.cols());
    let mut rows = Vec::with_capacity(nc);
    for j in 0..nc {
        let mut row = a.column(j);
        row.extend((0..nc).map(|k| u64::from(k == j)));
        rows.push(row);
    }
    let reduced = howell_rows(rows, m, nr + nc);

    let mut target: Vec<u64> = b.iter().map(|&x| x % m).collect();
    let mut x = vec![0u64; nc];
    let mut kernel_rows = Vec::new();
    for row in &reduced {
        let col = row.iter().position(|&v| v != 0).expect("nonzero row");
        if col >= nr {
            kernel_rows.push(row[nr..].to_vec());
            continue;
        }
        let q = target[col] / row[col];
        if q != 0 {
            axpy(&mut target, q, &row[..nr], m);
            for (xi, &r) in x.iter_mut().zip(&row[nr..]) {
                *xi = add_mod(*xi, mul_mod(q, r, m), m);
            }
        }
    }
    let kernel = howell_form(&kernel_rows, m, nc)?;
    let particular = if target.iter().all(|&v| v == 0) {
        Some(kernel.reduce(&x)?.0)
    } else {
        None
    };
    Ok(LinearSolution { particular, kernel })
}

/// Kernel of `x -> A x`.
pub fn kernel(a: &ResidueMatrix) -> Result<SubmoduleBasis> {
    Ok(solve_linear(a, &vec![0; a.rows()])?.kernel)
}

/// Left kernel `{ y : y^T A = 0 }` of the matrix whose rows are `rows`.
pub fn left_kernel(rows: &[Vec<u64>], modulus: u64, ncols: usize) -> Result<SubmoduleBasis> {
    let mut entries = Vec::with_capacity(rows.len() * ncols);
    for row in rows {
        if row.len() != ncols {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: row.len(),
            });
        }
        entries.extend_from_slice(row);
    }
    let a = ResidueMatrix::new(modulus, rows.len(), ncols, entries)?;
    kernel(&a.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn span_by_exhaustion(rows: &[Vec<u64>], m: u64, r: usize) -> BTreeSet<Vec<u64>> {
        let mut span = BTreeSet::new();
        span.insert(vec![0; r]);
        loop {
            let mut next = span.clone();
            for v in &span {
                for row in rows {
                    let w: Vec<u64> = v.iter().zip(row).map(|(&a, &b)| (a + b) % m).collect();
                    next.insert(w);
                }
            }
            if next.len() == span.len() {
                return span;
            }
            span = next;
        }
    }

    #[test]
    fn empty_rows_give_zero_module() {
        let b = howell_form(&[], 8, 1).unwrap();
        assert!(b.is_zero());
        assert_eq!(b.order(), 1);
    }

    #[test]
    fn full_module_over_nine() {
        let b = howell_form(&[vec![1, 0], vec![0, 1]], 9, 2).unwrap();
        assert_eq!(b.rows(), &[vec![1, 0], vec![0, 1]]);
        assert!(b.is_full());
    }

    #[test]
    fn multiples_of_two_mod_eight() {
        let b = howell_form(&[vec![2]], 8, 1).unwrap();
        assert_eq!(b.rows(), &[vec![2]]);
        let span: BTreeSet<_> = b.enumerate().into_iter().collect();
        assert_eq!(span, span_by_exhaustion(&[vec![2]], 8, 1));
        assert_eq!(span.len(), 4);
        // 6 generates the same ideal as 2
        assert_eq!(howell_form(&[vec![6]], 8, 1).unwrap(), b);
    }

    #[test]
    fn membership_examples() {
        let b = howell_form(&[vec![2]], 8, 1).unwrap();
        let w = b.membership(&[4]).unwrap().unwrap();
        assert_eq!(w.coefficients, vec![2]);
        assert_eq!(b.combine(&w.coefficients), vec![4]);
        assert!(b.membership(&[1]).unwrap().is_none());
        let z = SubmoduleBasis::zero(9, 1).unwrap();
        assert!(z.contains(&[0]).unwrap());
        assert!(b.membership(&[1, 2]).is_err());
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // span{(2, 1)} mod 4 contains (0, 2); plain echelon form would miss it
        let b = howell_form(&[vec![2, 1]], 4, 2).unwrap();
        assert_eq!(b.rows(), &[vec![2, 1], vec![0, 2]]);
        assert!(b.contains(&[0, 2]).unwrap());
        assert_eq!(b.order(), 4);
    }

    #[test]
    fn solve_examples() {
        let a = ResidueMatrix::from_rows(8, &[[2i64]]).unwrap();
        let s = solve_linear(&a, &[4]).unwrap();
        assert_eq!(s.particular, Some(vec![2]));
        assert_eq!(s.kernel.rows(), &[vec![4]]);
        let none = solve_linear(&a, &[1]).unwrap();
        assert_eq!(none.particular, None);
        assert_eq!(none.kernel.rows(), &[vec![4]]);

        let id = ResidueMatrix::identity(9, 2).unwrap();
        let s = solve_linear(&id, &[5, 7]).unwrap();
        assert_eq!(s.particular, Some(vec![5, 7]));
        assert!(s.kernel.is_zero());
        assert!(solve_linear(&id, &[1]).is_err());
    }

    #[test]
    fn solve_agrees_with_exhaustive_search() {
        // A = (2) over Z/8: solutions of 2x = b by enumeration
        for b in 0..8u64 {
            let a = ResidueMatrix::from_rows(8, &[[2i64]]).unwrap();
            let brute: Vec<u64> = (0..8).filter(|x| (2 * x) % 8 == b).collect();
            let s = solve_linear(&a, &[b]).unwrap();
            assert_eq!(s.particular.is_some(), !brute.is_empty());
        }
    }

    #[test]
    fn intersection_of_ideals() {
        let a = howell_form(&[vec![2, 0], vec![0, 3]], 12, 2).unwrap();
        let b = howell_form(&[vec![3, 0], vec![0, 2]], 12, 2).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, howell_form(&[vec![6, 0], vec![0, 6]], 12, 2).unwrap());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn left_kernel_matches_definition() {
        let rows = vec![vec![2, 4], vec![1, 2], vec![0, 4]];
        let k = left_kernel(&rows, 8, 2).unwrap();
        for y in k.enumerate() {
            for c in 0..2 {
                let s: u64 = (0..3).map(|i| y[i] * rows[i][c]).sum();
                assert_eq!(s % 8, 0);
            }
        }
        // brute force count of left kernel
        let mut count = 0;
        for a in 0..8u64 {
            for b in 0..8u64 {
                for c in 0..8u64 {
                    if (2 * a + b) % 8 == 0 && (4 * a + 2 * b + 4 * c) % 8 == 0 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(k.order(), count);
    }
}
