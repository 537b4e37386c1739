//! Brute-force cohomology by enumerating every map `G -> M`.
//!
//! Only usable when `|M|^|G|` is tiny; it shares no code with the
//! linear-algebra pipeline beyond the group and action tables, which makes it
//! a reference for cross-checking.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cohomology::{Cohomology, GModule};
use crate::matgroup::MatGroup;
use crate::zmod::arith::{add_mod, sub_mod};
use crate::zmod::ResidueMatrix;
use crate::{Error, Result};

/// Largest `|M|^|G|` the enumerator accepts.
pub const SEARCH_LIMIT: u128 = 10_000;

type Table = Vec<u64>;

/// Every cocycle, local cocycle and coboundary as flat value tables
/// (`|G| * r` entries, element-major).
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub cocycles: BTreeSet<Table>,
    pub local_cocycles: BTreeSet<Table>,
    pub coboundaries: BTreeSet<Table>,
    modulus: u64,
}

impl BruteForce {
    pub fn h1_order(&self) -> u128 {
        (self.cocycles.len() / self.coboundaries.len()) as u128
    }

    pub fn h1_loc_order(&self) -> u128 {
        (self.local_cocycles.len() / self.coboundaries.len()) as u128
    }

    /// Classes in `Z / B` killed by `k`, counted as cocycles `z` with
    /// `k z` a coboundary, divided by `|B|`.
    pub fn torsion_count(&self, cocycles: &BTreeSet<Table>, k: u64) -> u128 {
        let killed = cocycles
            .iter()
            .filter(|z| {
                let kz: Table = z
                    .iter()
                    .map(|&x| (x as u128 * k as u128 % self.modulus as u128) as u64)
                    .collect();
                self.coboundaries.contains(&kz)
            })
            .count();
        (killed / self.coboundaries.len()) as u128
    }
}

pub fn search_space(module: &GModule) -> u128 {
    let size = module.module_order();
    let n = module.group().order() as u32;
    size.checked_pow(n).unwrap_or(u128::MAX)
}

fn all_vectors(m: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn act(g: &ResidueMatrix, v: &[u64]) -> Vec<u64> {
    g.mul_vec(v).expect("dimensions agree")
}

pub fn brute_force(module: &GModule) -> Result<BruteForce> {
    let space = search_space(module);
    if space > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge(space, SEARCH_LIMIT));
    }
    let m = module.modulus();
    let r = module.rank();
    let group = module.group();
    let n = group.order();
    let vectors = all_vectors(m, r);
    let actions: Vec<&ResidueMatrix> = (0..n).map(|g| module.action(g)).collect();
    let products: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| group.mul(a, b)).collect()).collect();

    // g v - v for every g and v
    let shifts: Vec<Vec<Vec<u64>>> = actions
        .iter()
        .map(|g| {
            vectors
                .iter()
                .map(|v| act(g, v).iter().zip(v).map(|(&a, &b)| sub_mod(a, b, m)).collect())
                .collect()
        })
        .collect();
    let local_images: Vec<BTreeSet<Vec<u64>>> = shifts.iter().map(|s| s.iter().cloned().collect()).collect();

    let mut coboundaries = BTreeSet::new();
    for (vi, _) in vectors.iter().enumerate() {
        coboundaries.insert((0..n).flat_map(|g| shifts[g][vi].clone()).collect::<Table>());
    }

    let mut cocycles = BTreeSet::new();
    let mut local_cocycles = BTreeSet::new();
    let mut digits = vec![0usize; n];
    loop {
        let value = |g: usize| &vectors[digits[g]];
        // Z(ab) = Z(a) + a Z(b) for every pair
        let is_cocycle = (0..n).all(|a| {
            (0..n).all(|b| {
                let gb = act(actions[a], value(b));
                let rhs: Vec<u64> = value(a).iter().zip(&gb).map(|(&x, &y)| add_mod(x, y, m)).collect();
                value(products[a][b]) == &rhs
            })
        });
        if is_cocycle {
            let table: Table = (0..n).flat_map(|g| value(g).clone()).collect();
            if (0..n).all(|g| local_images[g].contains(value(g))) {
                local_cocycles.insert(table.clone());
            }
            cocycles.insert(table);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(BruteForce {
                    cocycles,
                    local_cocycles,
                    coboundaries,
                    modulus: m,
                });
            }
            digits[pos] += 1;
            if digits[pos] < vectors.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Outcome of checking one instance against the linear-algebra pipeline.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub name: String,
    pub group_order: usize,
    pub module_order: u128,
    pub search_space: u128,
    pub cocycles: u128,
    pub coboundaries: u128,
    pub local_cocycles: u128,
    pub h1: Vec<u64>,
    pub h1_loc: Vec<u64>,
    pub mismatches: Vec<String>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn compare(name: &str, module: &Arc<GModule>) -> Result<Comparison> {
    let brute = brute_force(module)?;
    let coh = Cohomology::new(module.clone())?;
    let mut mismatches = Vec::new();

    let spaces = [
        ("Z1", coh.cocycle_space()?, &brute.cocycles),
        ("B1", coh.coboundary_space()?, &brute.coboundaries),
        ("Z1_loc", coh.local_cocycle_space()?, &brute.local_cocycles),
    ];
    for (label, basis, expected) in &spaces {
        let got: BTreeSet<Table> = basis.enumerate().into_iter().collect();
        if &got != *expected {
            mismatches.push(format!(
                "{label}: {} tables vs {} by enumeration",
                got.len(),
                expected.len()
            ));
        }
    }

    let h1 = coh.h1()?;
    let h1_loc = coh.h1_loc()?;
    for (label, result, order, cocycles) in [
        ("H1", &h1, brute.h1_order(), &brute.cocycles),
        ("H1_loc", &h1_loc, brute.h1_loc_order(), &brute.local_cocycles),
    ] {
        if result.structure.order() != order {
            mismatches.push(format!("|{label}|: {} vs {order}", result.structure.order()));
        }
        for k in divisors(module.modulus()) {
            let expected = brute.torsion_count(cocycles, k);
            let got = result.structure.torsion_count(k);
            if got != expected {
                mismatches.push(format!("{label}[{k}]: {got} vs {expected}"));
            }
        }
        for (z, &d) in result.representatives.iter().zip(result.invariant_factors()) {
            let table: Table = z.values().concat();
            if !cocycles.contains(&table) {
                mismatches.push(format!("{label} representative of order {d} is not in the cocycle set"));
            }
        }
    }

    Ok(Comparison {
        name: name.to_string(),
        group_order: module.group().order(),
        module_order: module.module_order(),
        search_space: search_space(module),
        cocycles: brute.cocycles.len() as u128,
        coboundaries: brute.coboundaries.len() as u128,
        local_cocycles: brute.local_cocycles.len() as u128,
        h1: h1.invariant_factors().to_vec(),
        h1_loc: h1_loc.invariant_factors().to_vec(),
        mismatches,
    })
}

/// A named module for the cross-check corpus.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub module: Arc<GModule>,
}

impl Instance {
    pub fn natural(name: impl Into<String>, modulus: u64, generators: &[&[&[i64]]]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| ResidueMatrix::from_rows(modulus, g))
            .collect::<Result<Vec<_>>>()?;
        let group = Arc::new(MatGroup::generated_by(gens)?);
        Ok(Self {
            name: name.into(),
            module: Arc::new(GModule::natural(group)),
        })
    }

    /// Whether the module is the group's own column-vector action, so the
    /// instance can be written out as a group spec.
    pub fn is_natural(&self) -> bool {
        let g = self.module.group();
        g.modulus() == self.module.modulus()
            && g.rank() == self.module.rank()
            && (0..g.order()).all(|i| self.module.action(i) == g.element(i))
    }

    pub fn search_space(&self) -> u128 {
        search_space(&self.module)
    }
}

/// Fixed tiny instances: cyclic groups, unit groups, diagonal and Klein-type
/// groups, `GL_2(F_2)`, a unipotent stabilizer and a non-faithful action.
pub fn builtin_corpus() -> Result<Vec<Instance>> {
    let mut out = vec![
        Instance::natural("trivial on Z/4", 4, &[&[&[1]]])?,
        Instance::natural("<3> on Z/4", 4, &[&[&[3]]])?,
        Instance::natural("<-1> on Z/8", 8, &[&[&[7]]])?,
        Instance::natural("<3> on Z/8", 8, &[&[&[3]]])?,
        Instance::natural("(Z/8)^* on Z/8", 8, &[&[&[3]], &[&[5]]])?,
        Instance::natural("<2> on Z/5", 5, &[&[&[2]]])?,
        Instance::natural("<2> on Z/7", 7, &[&[&[2]]])?,
        Instance::natural("<4> on Z/9", 9, &[&[&[4]]])?,
        Instance::natural("diag(-1,1) on (Z/4)^2", 4, &[&[&[3, 0], &[0, 1]]])?,
        Instance::natural("diag(-1,-1) on (Z/4)^2", 4, &[&[&[3, 0], &[0, 3]]])?,
        Instance::natural("swap on (Z/4)^2", 4, &[&[&[0, 1], &[1, 0]]])?,
        Instance::natural(
            "Klein diag(+-1,+-1) on (Z/3)^2",
            3,
            &[&[&[2, 0], &[0, 1]], &[&[1, 0], &[0, 2]]],
        )?,
        Instance::natural("unipotent on (Z/3)^2", 3, &[&[&[1, 1], &[0, 1]]])?,
        Instance::natural("unipotent on (Z/2)^2", 2, &[&[&[1, 1], &[0, 1]]])?,
        Instance::natural("GL_2(F_2)", 2, &[&[&[1, 1], &[0, 1]], &[&[0, 1], &[1, 0]]])?,
    ];
    // (Z/8)^* acting on Z/4 through reduction: 5 acts trivially
    let units = out[4].module.group().clone();
    let action = units
        .elements()
        .iter()
        .map(|g| g.reduce(4))
        .collect::<Result<Vec<_>>>()?;
    out.push(Instance {
        name: "(Z/8)^* on Z/4 by reduction".into(),
        module: Arc::new(GModule::with_action(units, 4, 1, action)?),
    });
    Ok(out)
}

/// Instances from `corpus` with `|G| <= max_group`, `|M| <= max_module` and
/// a search space within [`SEARCH_LIMIT`].
pub fn select(corpus: Vec<Instance>, max_group: usize, max_module: u128) -> Vec<Instance> {
    corpus
        .into_iter()
        .filter(|i| {
            i.module.group().order() <= max_group
                && i.module.module_order() <= max_module
                && i.search_space() <= SEARCH_LIMIT
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_mod_eight_by_enumeration() {
        let inst = Instance::natural("units", 8, &[&[&[3]], &[&[5]]]).unwrap();
        let b = brute_force(&inst.module).unwrap();
        assert_eq!(b.coboundaries.len(), 4);
        assert!(b.local_cocycles.contains(&vec![0, 4, 4, 0]));
        assert!(!b.coboundaries.contains(&vec![0, 4, 4, 0]));
        let c = compare("units", &inst.module).unwrap();
        assert!(c.agrees(), "{:?}", c.mismatches);
        assert_eq!(c.search_space, 4096);
    }

    #[test]
    fn oversized_instance_rejected() {
        let inst = Instance::natural("klein", 4, &[&[&[3, 0], &[0, 1]], &[&[1, 0], &[0, 3]]]).unwrap();
        assert!(matches!(
            brute_force(&inst.module),
            Err(Error::SearchSpaceTooLarge(65536, _))
        ));
    }

    #[test]
    fn corpus_agrees() {
        let corpus = select(builtin_corpus().unwrap(), usize::MAX, u128::MAX);
        assert!(corpus.len() >= 15);
        for inst in corpus {
            let c = compare(&inst.name, &inst.module).unwrap();
            assert!(c.agrees(), "{}: {:?}", inst.name, c.mismatches);
        }
    }

    #[test]
    fn non_faithful_action_detected() {
        let corpus = builtin_corpus().unwrap();
        assert!(corpus.iter().filter(|i| !i.is_natural()).count() == 1);
    }
}
