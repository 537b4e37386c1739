use std::fmt;

use super::arith::{add_mod, check_modulus, mul_mod, reduce_signed, sub_mod};
use super::howell::{howell_form, solve_linear};
use crate::{Error, Result};

/// A dense row-major matrix of residues modulo `modulus`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ResidueMatrix {
    /// Builds a matrix from row-major residues, reducing every entry.
    pub fn new(modulus: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let entries = entries.into_iter().map(|e| e % modulus).collect();
        Ok(Self {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from signed integer rows, reducing into `[0, m)`.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: u64, rows: &[R]) -> Result<Self> {
        check_modulus(modulus)?;
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&e| reduce_signed(e as i128, modulus)));
        }
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn identity(modulus: u64, n: usize) -> Result<Self> {
        check_modulus(modulus)?;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Ok(Self {
            modulus,
            rows: n,
            cols: n,
            entries,
        })
    }

    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        Self::new(modulus, rows, cols, vec![0; rows * cols])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        Self {
            modulus: self.modulus,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    fn check_same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let m = self.modulus;
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let out = &mut entries[i * other.cols..(i + 1) * other.cols];
                for (j, o) in out.iter_mut().enumerate() {
                    *o = add_mod(*o, mul_mod(a, other.get(k, j), m), m);
                }
            }
        }
        Ok(Self {
            modulus: m,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| add_mod(a, b, m))
            .collect();
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.apply(v))
    }

    /// `self * v` without the length check; callers guarantee `v.len() == cols`.
    pub(crate) fn apply(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| add_mod(acc, mul_mod(a, x, m), m))
            })
            .collect()
    }

    /// `self - I` for a square matrix.
    pub fn minus_identity(&self) -> Self {
        let m = self.modulus;
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            out.entries[idx] = sub_mod(out.entries[idx], 1, m);
        }
        out
    }

    /// Entrywise reduction to a divisor of the modulus.
    pub fn reduce(&self, new_modulus: u64) -> Result<Self> {
        check_modulus(new_modulus)?;
        if !self.modulus.is_multiple_of(new_modulus) {
            return Err(Error::NotADivisor(new_modulus, self.modulus));
        }
        Self::new(new_modulus, self.rows, self.cols, self.entries.clone())
    }

    /// The square block with top-left corner `(start, start)` and side `size`.
    pub fn diagonal_block(&self, start: usize, size: usize) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in start..start + size {
            entries.extend_from_slice(&self.row(i)[start..start + size]);
        }
        Self {
            modulus: self.modulus,
            rows: size,
            cols: size,
            entries,
        }
    }

    /// Invertibility over `Z/mZ`: the rows must span the whole module.
    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        howell_form(&self.row_vecs(), self.modulus, self.cols)
            .map(|b| b.is_full())
            .unwrap_or(false)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_invertible() {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let sol = solve_linear(self, &e).ok()?;
            cols.push(sol.particular?);
        }
        let mut entries = vec![0; n * n];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                entries[i * n + j] = c[i];
            }
        }
        Some(Self {
            modulus: self.modulus,
            rows: n,
            cols: n,
            entries,
        })
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)?;
        write!(f, " mod {}", self.modulus)
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
