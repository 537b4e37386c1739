//! Finite groups of invertible matrices over `Z/mZ`, enumerated by
//! breadth-first closure.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::zmod::arith::{is_prime, valuation};
use crate::zmod::{howell_form, kernel, ResidueMatrix, SubmoduleBasis};
use crate::{Error, Result};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite matrix group with a complete, deterministic element list.
///
/// Element 0 is the identity. `cayley[g][j]` is the index of
/// `elements[g] * generators[j]`, and `parent[h] = Some((g, j))` records the
/// BFS tree edge through which `h` was discovered.
#[derive(Clone, Debug)]
pub struct MatGroup {
    modulus: u64,
    rank: usize,
    generators: Vec<ResidueMatrix>,
    elements: Vec<ResidueMatrix>,
    index: HashMap<Vec<u64>, usize>,
    cayley: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
}

impl MatGroup {
    /// The trivial group of `rank x rank` matrices mod `modulus`, with no
    /// generators.
    pub fn trivial(modulus: u64, rank: usize) -> Result<Self> {
        let id = ResidueMatrix::identity(modulus, rank)?;
        let mut index = HashMap::new();
        index.insert(id.entries().to_vec(), 0);
        Ok(Self {
            modulus,
            rank,
            generators: Vec::new(),
            elements: vec![id],
            index,
            cayley: vec![Vec::new()],
            parent: vec![None],
        })
    }

    /// Breadth-first closure of `generators` starting at the identity.
    pub fn closure(generators: Vec<ResidueMatrix>, cap: usize) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let (modulus, rank) = (first.modulus(), first.rows());
        for (i, g) in generators.iter().enumerate() {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus, g.modulus()));
            }
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: g.rows().max(g.cols()),
                });
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible { index: i, modulus });
            }
        }
        let mut group = Self::trivial(modulus, rank)?;
        group.generators = generators;
        group.cayley.clear();

        let mut head = 0;
        while head < group.elements.len() {
            let g = group.elements[head].clone();
            let mut row = Vec::with_capacity(group.generators.len());
            for j in 0..group.generators.len() {
                let h = g.mul(&group.generators[j])?;
                let idx = match group.index.get(h.entries()) {
                    Some(&idx) => idx,
                    None => {
                        if group.elements.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let idx = group.elements.len();
                        group.index.insert(h.entries().to_vec(), idx);
                        group.elements.push(h);
                        group.parent.push(Some((head, j)));
                        idx
                    }
                };
                row.push(idx);
            }
            group.cayley.push(row);
            head += 1;
        }
        Ok(group)
    }

    pub fn generated_by(generators: Vec<ResidueMatrix>) -> Result<Self> {
        Self::closure(generators, DEFAULT_CAP)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ResidueMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[ResidueMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ResidueMatrix {
        &self.elements[i]
    }

    pub fn cayley(&self, g: usize, generator: usize) -> usize {
        self.cayley[g][generator]
    }

    pub fn parent(&self, g: usize) -> Option<(usize, usize)> {
        self.parent[g]
    }

    /// Element index of generator `j`.
    pub fn generator_index(&self, j: usize) -> usize {
        self.cayley[0][j]
    }

    pub fn index_of(&self, m: &ResidueMatrix) -> Option<usize> {
        if m.modulus() != self.modulus || m.rows() != self.rank || m.cols() != self.rank {
            return None;
        }
        self.index.get(m.entries()).copied()
    }

    pub fn contains(&self, m: &ResidueMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a]
            .mul(&self.elements[b])
            .expect("group elements share modulus and rank");
        self.index[prod.entries()]
    }

    pub fn power(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut acc = g;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, g: usize) -> usize {
        let mut prev = 0;
        let mut acc = g;
        while acc != 0 {
            prev = acc;
            acc = self.mul(acc, g);
        }
        prev
    }

    /// Sorted element indices of `<g>`.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut acc = g;
        while acc != 0 {
            out.push(acc);
            acc = self.mul(acc, g);
        }
        out.sort_unstable();
        out
    }

    /// One generator per distinct cyclic subgroup, the first in enumeration
    /// order.
    pub fn cyclic_subgroup_generators(&self) -> Vec<usize> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen.insert(self.cyclic_subgroup(g)) {
                out.push(g);
            }
        }
        out
    }

    /// Closure of a subset of elements, with generators picked greedily so
    /// that each one enlarges the subgroup generated so far.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Self> {
        let mut gens: Vec<ResidueMatrix> = Vec::new();
        let mut current: Option<Self> = None;
        for &e in elements {
            let m = &self.elements[e];
            if current.as_ref().map_or(e == 0, |c| c.contains(m)) {
                continue;
            }
            gens.push(m.clone());
            current = Some(Self::generated_by(gens.clone())?);
        }
        match current {
            Some(c) => Ok(c),
            None => Self::trivial(self.modulus, self.rank),
        }
    }

    /// The set of elements of `p`-power order, returned as a group when it
    /// is a subgroup of full Sylow size (it is then the unique `p`-Sylow).
    pub fn unique_p_sylow(&self, p: u64) -> Result<Option<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let is_p_power = |mut k: u64| {
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        };
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| is_p_power(self.element_order(g)))
            .collect();
        let n = self.order() as u64;
        let sylow_order = p.pow(valuation(n, p).unwrap_or(0));
        if members.len() as u64 != sylow_order {
            return Ok(None);
        }
        let sub = self.subgroup(&members)?;
        Ok((sub.order() == members.len()).then_some(sub))
    }

    pub fn fixes_vector(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: v.len(),
            });
        }
        let v: Vec<u64> = v.iter().map(|&x| x % self.modulus).collect();
        Ok(self.generators.iter().all(|g| g.apply(&v) == v))
    }

    /// Howell basis of the common fixed vectors, `∩_g ker(g - 1)`.
    pub fn fixed_submodule(&self) -> Result<SubmoduleBasis> {
        if self.generators.is_empty() {
            return SubmoduleBasis::full(self.modulus, self.rank);
        }
        let r = self.rank;
        let mut entries = Vec::with_capacity(self.generators.len() * r * r);
        for g in &self.generators {
            entries.extend_from_slice(g.minus_identity().entries());
        }
        let stacked = ResidueMatrix::new(self.modulus, self.generators.len() * r, r, entries)?;
        kernel(&stacked)
    }

    /// Image under entrywise reduction mod `new_modulus`, together with the
    /// element-level surjection.
    pub fn reduce_modulus(&self, new_modulus: u64) -> Result<(Self, Vec<usize>)> {
        if new_modulus < 2 || !self.modulus.is_multiple_of(new_modulus) {
            return Err(Error::NotADivisor(new_modulus, self.modulus));
        }
        let image = if self.generators.is_empty() {
            Self::trivial(new_modulus, self.rank)?
        } else {
            let gens = self
                .generators
                .iter()
                .map(|g| g.reduce(new_modulus))
                .collect::<Result<Vec<_>>>()?;
            Self::generated_by(gens)?
        };
        let map = self
            .elements
            .iter()
            .map(|e| {
                let r = e.reduce(new_modulus)?;
                image.index_of(&r).ok_or(Error::NotAnElement)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((image, map))
    }

    /// `T G T^{-1}`.
    pub fn conjugate(&self, t: &ResidueMatrix) -> Result<Self> {
        let t_inv = t.inverse().ok_or(Error::NotInvertible {
            index: 0,
            modulus: t.modulus(),
        })?;
        if self.generators.is_empty() {
            return Self::trivial(self.modulus, self.rank);
        }
        let gens = self
            .generators
            .iter()
            .map(|g| t.mul(g)?.mul(&t_inv))
            .collect::<Result<Vec<_>>>()?;
        Self::generated_by(gens)
    }

    /// Element set as sorted entry tuples, for order-independent comparison.
    pub fn element_set(&self) -> BTreeSet<Vec<u64>> {
        self.elements.iter().map(|e| e.entries().to_vec()).collect()
    }

    pub fn same_elements(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.rank == other.rank && self.element_set() == other.element_set()
    }

    /// Checks that every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.rank == other.rank && self.elements.iter().all(|e| other.contains(e))
    }
}

/// Howell basis of the image of `g - 1`.
pub fn image_of_minus_identity(g: &ResidueMatrix) -> Result<SubmoduleBasis> {
    let t = g.minus_identity().transpose();
    howell_form(&t.row_vecs(), g.modulus(), g.rows())
}
