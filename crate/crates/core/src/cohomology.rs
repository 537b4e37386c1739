//! First cohomology `H^1(G, M)` and first local cohomology `H^1_loc(G, M)`.
//!
//! A cocycle is determined by its values on the generators of `G`: along a
//! BFS tree edge `h = g * s_j` the identity `Z_h = Z_g + g Z_{s_j}` fixes
//! `Z_h`, and every remaining Cayley edge contributes a linear constraint on
//! the generator values. All subspaces are therefore computed in
//! *generator coordinates* `(Z/mZ)^{|S| r}` and only expanded to full value
//! tables for output.
//!
//! `H^1_loc` is the subgroup of classes whose restriction to every cyclic
//! subgroup vanishes. Since a cocycle on `<c>` is a coboundary exactly when
//! `Z_c` lies in `Im(c - 1)`, the local subspace is cut out by one
//! membership condition per cyclic subgroup.

use std::sync::Arc;

use crate::matgroup::{image_of_minus_identity, MatGroup};
use crate::zmod::arith::{add_mod, mul_mod, sub_mod};
use crate::zmod::{
    howell_form, kernel, quotient_with_generators, solve_linear, AbelianStructure, ResidueMatrix, SubmoduleBasis,
};
use crate::{Error, Result};

/// A finite group acting linearly on `(Z/mZ)^r`.
///
/// The group is a [`MatGroup`] used for element bookkeeping; the action is an
/// arbitrary homomorphism into `GL_r(Z/mZ)`, stored per element. The natural
/// module lets a matrix group act on its own column vectors.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<MatGroup>,
    modulus: u64,
    rank: usize,
    action: Vec<ResidueMatrix>,
}

impl GModule {
    pub fn natural(group: Arc<MatGroup>) -> Self {
        let action = group.elements().to_vec();
        Self {
            modulus: group.modulus(),
            rank: group.rank(),
            group,
            action,
        }
    }

    /// A module with an explicit per-element action, checked to be a
    /// homomorphism on every Cayley edge.
    pub fn with_action(group: Arc<MatGroup>, modulus: u64, rank: usize, action: Vec<ResidueMatrix>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(0));
        }
        if action.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: action.len(),
            });
        }
        for a in &action {
            if a.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus, a.modulus()));
            }
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: a.rows(),
                });
            }
        }
        if !action[0].is_identity() {
            return Err(Error::NotAHomomorphism {
                element: 0,
                generator: 0,
            });
        }
        for g in 0..group.order() {
            for j in 0..group.generators().len() {
                let h = group.cayley(g, j);
                let s = group.generator_index(j);
                if action[g].mul(&action[s])? != action[h] {
                    return Err(Error::NotAHomomorphism {
                        element: g,
                        generator: j,
                    });
                }
            }
        }
        Ok(Self {
            group,
            modulus,
            rank,
            action,
        })
    }

    /// The module on which `group` acts through `proj` followed by the
    /// action of `quotient`. `proj` must be a surjective homomorphism.
    pub fn pulled_back(group: Arc<MatGroup>, quotient: &GModule, proj: &[usize]) -> Result<Self> {
        check_projection(&group, quotient.group(), proj)?;
        let action = proj.iter().map(|&q| quotient.action[q].clone()).collect();
        Self::with_action(group, quotient.modulus, quotient.rank, action)
    }

    pub fn group(&self) -> &Arc<MatGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &ResidueMatrix {
        &self.action[g]
    }

    fn generator_action(&self, j: usize) -> &ResidueMatrix {
        &self.action[self.group.generator_index(j)]
    }

    /// Number of generator unknowns, `|S| * r`.
    fn unknowns(&self) -> usize {
        self.group.generators().len() * self.rank
    }

    pub fn module_order(&self) -> u128 {
        (self.modulus as u128).pow(self.rank as u32)
    }
}

fn check_projection(group: &MatGroup, quotient: &MatGroup, proj: &[usize]) -> Result<()> {
    if proj.len() != group.order() {
        return Err(Error::DimensionMismatch {
            expected: group.order(),
            found: proj.len(),
        });
    }
    if proj.iter().any(|&q| q >= quotient.order()) {
        return Err(Error::NotSurjective);
    }
    if proj[0] != 0 {
        return Err(Error::NotAHomomorphism {
            element: 0,
            generator: 0,
        });
    }
    for g in 0..group.order() {
        for j in 0..group.generators().len() {
            let h = group.cayley(g, j);
            let s = group.generator_index(j);
            if quotient.mul(proj[g], proj[s]) != proj[h] {
                return Err(Error::NotAHomomorphism {
                    element: g,
                    generator: j,
                });
            }
        }
    }
    let mut hit = vec![false; quotient.order()];
    for &q in proj {
        hit[q] = true;
    }
    if hit.iter().all(|&x| x) {
        Ok(())
    } else {
        Err(Error::NotSurjective)
    }
}

/// A 1-cocycle `Z: G -> M`, stored as a full value table in the group's
/// enumeration order.
#[derive(Clone, Debug)]
pub struct Cocycle {
    module: Arc<GModule>,
    values: Vec<Vec<u64>>,
}

impl Cocycle {
    /// Validates `Z_1 = 0` and `Z_{gs} = Z_g + g Z_s` on every Cayley edge,
    /// which implies the identity for all pairs.
    pub fn new(module: Arc<GModule>, values: Vec<Vec<u64>>) -> Result<Self> {
        let (m, r, n) = (module.modulus, module.rank, module.group.order());
        if values.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: values.len(),
            });
        }
        let mut values = values;
        for v in values.iter_mut() {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: v.len(),
                });
            }
            v.iter_mut().for_each(|x| *x %= m);
        }
        if values[0].iter().any(|&x| x != 0) {
            return Err(Error::NotACocycle {
                element: 0,
                generator: 0,
            });
        }
        let group = &module.group;
        for g in 0..n {
            for j in 0..group.generators().len() {
                let h = group.cayley(g, j);
                let s = group.generator_index(j);
                let moved = module.action[g].apply(&values[s]);
                let expected: Vec<u64> = values[g].iter().zip(&moved).map(|(&a, &b)| add_mod(a, b, m)).collect();
                if expected != values[h] {
                    return Err(Error::NotACocycle {
                        element: g,
                        generator: j,
                    });
                }
            }
        }
        Ok(Self { module, values })
    }

    /// Expands generator values along the BFS tree, then validates.
    pub fn from_generator_values(module: Arc<GModule>, generator_values: &[Vec<u64>]) -> Result<Self> {
        let s = module.group.generators().len();
        if generator_values.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                found: generator_values.len(),
            });
        }
        let r = module.rank;
        let mut flat = Vec::with_capacity(s * r);
        for v in generator_values {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: v.len(),
                });
            }
            flat.extend(v.iter().map(|&x| x % module.modulus));
        }
        let values = expand_generator_vector(&module, &flat);
        Self::new(module, values)
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        let values = vec![vec![0; module.rank]; module.group.order()];
        Self { module, values }
    }

    /// The coboundary `g -> g v - v`.
    pub fn coboundary(module: Arc<GModule>, v: &[u64]) -> Result<Self> {
        if v.len() != module.rank {
            return Err(Error::DimensionMismatch {
                expected: module.rank,
                found: v.len(),
            });
        }
        let m = module.modulus;
        let v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let values = module
            .action
            .iter()
            .map(|a| a.apply(&v).iter().zip(&v).map(|(&x, &y)| sub_mod(x, y, m)).collect())
            .collect();
        Ok(Self { module, values })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &[u64] {
        &self.values[g]
    }

    pub fn generator_values(&self) -> Vec<Vec<u64>> {
        (0..self.module.group.generators().len())
            .map(|j| self.values[self.module.group.generator_index(j)].clone())
            .collect()
    }

    fn generator_vector(&self) -> Vec<u64> {
        self.generator_values().concat()
    }

    pub fn scaled(&self, k: u64) -> Self {
        let m = self.module.modulus;
        let values = self
            .values
            .iter()
            .map(|v| v.iter().map(|&x| mul_mod(x, k % m, m)).collect())
            .collect();
        Self {
            module: self.module.clone(),
            values,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.module, &other.module) {
            return Err(Error::ActionMismatch(0));
        }
        let m = self.module.modulus;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, m)).collect())
            .collect();
        Ok(Self {
            module: self.module.clone(),
            values,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0))
    }
}

/// The linear maps `z -> Z_g` from generator coordinates to values.
struct GeneratorCoordinates {
    unknowns: usize,
    rank: usize,
    /// Per element, an `r x unknowns` row-major matrix.
    maps: Vec<Vec<u64>>,
}

impl GeneratorCoordinates {
    fn new(module: &GModule) -> Self {
        let (m, r, n) = (module.modulus, module.rank, module.unknowns());
        let group = &module.group;
        let mut maps: Vec<Vec<u64>> = Vec::with_capacity(group.order());
        maps.push(vec![0; r * n]);
        for h in 1..group.order() {
            let (g, j) = group.parent(h).expect("non-identity elements have a BFS parent");
            let mut map = maps[g].clone();
            let act = &module.action[g];
            for a in 0..r {
                for b in 0..r {
                    let idx = a * n + j * r + b;
                    map[idx] = add_mod(map[idx], act.get(a, b), m);
                }
            }
            maps.push(map);
        }
        Self {
            unknowns: n,
            rank: r,
            maps,
        }
    }

    fn row(&self, g: usize, a: usize) -> &[u64] {
        &self.maps[g][a * self.unknowns..(a + 1) * self.unknowns]
    }

    fn value(&self, g: usize, z: &[u64], m: u64) -> Vec<u64> {
        (0..self.rank)
            .map(|a| {
                self.row(g, a)
                    .iter()
                    .zip(z)
                    .fold(0, |acc, (&c, &x)| add_mod(acc, mul_mod(c, x, m), m))
            })
            .collect()
    }
}

fn expand_generator_vector(module: &GModule, z: &[u64]) -> Vec<Vec<u64>> {
    let coords = GeneratorCoordinates::new(module);
    (0..module.group.order())
        .map(|g| coords.value(g, z, module.modulus))
        .collect()
}

/// Number of constraint rows accumulated before an intermediate Howell pass.
const BATCH_ROWS: usize = 4096;

/// Cohomology of one module, caching the generator-coordinate machinery.
pub struct Cohomology {
    module: Arc<GModule>,
    coords: GeneratorCoordinates,
    cocycles: SubmoduleBasis,
    coboundaries: SubmoduleBasis,
}

impl Cohomology {
    pub fn new(module: Arc<GModule>) -> Result<Self> {
        let coords = GeneratorCoordinates::new(&module);
        let cocycles = Self::solve_cocycles(&module, &coords)?;
        let coboundaries = Self::coboundary_rows(&module)?;
        if !coboundaries.is_subset_of(&cocycles)? {
            return Err(Error::NotContained);
        }
        Ok(Self {
            module,
            coords,
            cocycles,
            coboundaries,
        })
    }

    fn solve_cocycles(module: &GModule, coords: &GeneratorCoordinates) -> Result<SubmoduleBasis> {
        let (m, r, n) = (module.modulus, module.rank, module.unknowns());
        let group = &module.group;
        let mut constraints = SubmoduleBasis::zero(m, n)?;
        let mut pending: Vec<Vec<u64>> = Vec::new();
        for g in 0..group.order() {
            for j in 0..group.generators().len() {
                let h = group.cayley(g, j);
                if group.parent(h) == Some((g, j)) {
                    continue;
                }
                let act = &module.action[g];
                for a in 0..r {
                    let mut row: Vec<u64> = coords
                        .row(g, a)
                        .iter()
                        .zip(coords.row(h, a))
                        .map(|(&x, &y)| sub_mod(x, y, m))
                        .collect();
                    for b in 0..r {
                        let idx = j * r + b;
                        row[idx] = add_mod(row[idx], act.get(a, b), m);
                    }
                    if row.iter().any(|&x| x != 0) {
                        pending.push(row);
                    }
                }
                if pending.len() >= BATCH_ROWS {
                    pending.extend(constraints.rows().iter().cloned());
                    constraints = howell_form(&pending, m, n)?;
                    pending.clear();
                }
            }
        }
        pending.extend(constraints.rows().iter().cloned());
        let constraints = howell_form(&pending, m, n)?;
        let rows = constraints.rows().len();
        let system = ResidueMatrix::new(m, rows, n, constraints.rows().concat())?;
        kernel(&system)
    }

    fn coboundary_rows(module: &GModule) -> Result<SubmoduleBasis> {
        let (m, r, n) = (module.modulus, module.rank, module.unknowns());
        let s = module.group.generators().len();
        let shifted: Vec<ResidueMatrix> = (0..s).map(|j| module.generator_action(j).minus_identity()).collect();
        let rows: Vec<Vec<u64>> = (0..r)
            .map(|b| shifted.iter().flat_map(|d| d.column(b)).collect())
            .collect();
        howell_form(&rows, m, n)
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// `Z^1` in generator coordinates.
    pub fn cocycles_in_generator_coordinates(&self) -> &SubmoduleBasis {
        &self.cocycles
    }

    pub fn coboundaries_in_generator_coordinates(&self) -> &SubmoduleBasis {
        &self.coboundaries
    }

    /// `{ z : Z_c in Im(c - 1) }` for one element `c`, obtained by adjoining
    /// witness unknowns `w` to `L_c z - (c - 1) w = 0` and projecting.
    fn local_preimage(&self, c: usize) -> Result<SubmoduleBasis> {
        let (m, r, n) = (self.module.modulus, self.module.rank, self.coords.unknowns);
        let shifted = self.module.action[c].minus_identity();
        let mut entries = Vec::with_capacity(r * (n + r));
        for a in 0..r {
            entries.extend_from_slice(self.coords.row(c, a));
            entries.extend((0..r).map(|b| sub_mod(0, shifted.get(a, b), m)));
        }
        let system = ResidueMatrix::new(m, r, n + r, entries)?;
        let ker = kernel(&system)?;
        let projected: Vec<Vec<u64>> = ker.rows().iter().map(|row| row[..n].to_vec()).collect();
        howell_form(&projected, m, n)
    }

    /// `Z^1_loc` in generator coordinates.
    pub fn local_cocycles_in_generator_coordinates(&self) -> Result<SubmoduleBasis> {
        let mut current = self.cocycles.clone();
        for c in self.module.group.cyclic_subgroup_generators() {
            if current == self.coboundaries {
                break;
            }
            if c == 0 {
                continue;
            }
            current = current.intersect(&self.local_preimage(c)?)?;
        }
        Ok(current)
    }

    fn expand_basis(&self, basis: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        let (m, r) = (self.module.modulus, self.module.rank);
        let width = self.module.group.order() * r;
        let rows: Vec<Vec<u64>> = basis
            .rows()
            .iter()
            .map(|z| {
                (0..self.module.group.order())
                    .flat_map(|g| self.coords.value(g, z, m))
                    .collect()
            })
            .collect();
        howell_form(&rows, m, width)
    }

    /// `Z^1` as value tables in `(Z/mZ)^{|G| r}`.
    pub fn cocycle_space(&self) -> Result<SubmoduleBasis> {
        self.expand_basis(&self.cocycles)
    }

    /// `B^1` as value tables in `(Z/mZ)^{|G| r}`.
    pub fn coboundary_space(&self) -> Result<SubmoduleBasis> {
        self.expand_basis(&self.coboundaries)
    }

    pub fn local_cocycle_space(&self) -> Result<SubmoduleBasis> {
        self.expand_basis(&self.local_cocycles_in_generator_coordinates()?)
    }

    fn quotient(&self, cocycles: &SubmoduleBasis) -> Result<CohomologyResult> {
        let (structure, generators) = quotient_with_generators(cocycles, &self.coboundaries)?;
        let representatives = generators
            .iter()
            .map(|z| {
                let (canonical, _) = self.coboundaries.reduce(z)?;
                let values = (0..self.module.group.order())
                    .map(|g| self.coords.value(g, &canonical, self.module.modulus))
                    .collect();
                Ok(Cocycle {
                    module: self.module.clone(),
                    values,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyResult {
            structure,
            representatives,
            cocycles_order: cocycles.order(),
            coboundaries_order: self.coboundaries.order(),
        })
    }

    pub fn h1(&self) -> Result<CohomologyResult> {
        self.quotient(&self.cocycles)
    }

    pub fn h1_loc(&self) -> Result<CohomologyResult> {
        self.quotient(&self.local_cocycles_in_generator_coordinates()?)
    }

    /// Whether `z` (a cocycle on this module) represents the zero class,
    /// decided in generator coordinates.
    pub fn class_is_trivial(&self, z: &Cocycle) -> Result<bool> {
        self.coboundaries.contains(&z.generator_vector())
    }
}

/// A finite abelian group together with cocycle representatives of its
/// cyclic factors.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub structure: AbelianStructure,
    /// One cocycle per invariant factor, whose class has exactly that order.
    pub representatives: Vec<Cocycle>,
    /// Order of the cocycle group used in the quotient (`Z^1` or `Z^1_loc`).
    pub cocycles_order: u128,
    pub coboundaries_order: u128,
}

impl CohomologyResult {
    pub fn is_trivial(&self) -> bool {
        self.structure.is_trivial()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.structure.invariant_factors()
    }
}

pub fn cocycle_space(module: &Arc<GModule>) -> Result<SubmoduleBasis> {
    Cohomology::new(module.clone())?.cocycle_space()
}

pub fn coboundary_space(module: &Arc<GModule>) -> Result<SubmoduleBasis> {
    Cohomology::new(module.clone())?.coboundary_space()
}

pub fn h1(module: &Arc<GModule>) -> Result<CohomologyResult> {
    Cohomology::new(module.clone())?.h1()
}

pub fn h1_loc(module: &Arc<GModule>) -> Result<CohomologyResult> {
    Cohomology::new(module.clone())?.h1_loc()
}

/// Solves `Z_s = s v - v` on the generators; by the cocycle identity this
/// suffices for the whole group.
pub fn is_coboundary(z: &Cocycle) -> Result<Option<Vec<u64>>> {
    let module = &z.module;
    let (m, r) = (module.modulus, module.rank);
    let s = module.group.generators().len();
    if s == 0 {
        return Ok(Some(vec![0; r]));
    }
    let mut entries = Vec::with_capacity(s * r * r);
    for j in 0..s {
        entries.extend_from_slice(module.generator_action(j).minus_identity().entries());
    }
    let system = ResidueMatrix::new(m, s * r, r, entries)?;
    Ok(solve_linear(&system, &z.generator_vector())?.particular)
}

/// Per-element witnesses `m_g` with `Z_g = g m_g - m_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConditions {
    pub witnesses: Vec<Option<Vec<u64>>>,
}

impl LocalConditions {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    pub fn failures(&self) -> Vec<usize> {
        (0..self.witnesses.len())
            .filter(|&g| self.witnesses[g].is_none())
            .collect()
    }
}

pub fn satisfies_local_conditions(z: &Cocycle) -> Result<LocalConditions> {
    let witnesses = (0..z.values.len())
        .map(|g| {
            let shifted = z.module.action[g].minus_identity();
            Ok(solve_linear(&shifted, &z.values[g])?.particular)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalConditions { witnesses })
}

/// Restriction of `z` to a subgroup of its group, acting through the same
/// action.
pub fn restrict(z: &Cocycle, subgroup: Arc<MatGroup>) -> Result<Cocycle> {
    let module = &z.module;
    let mut indices = Vec::with_capacity(subgroup.order());
    for (i, e) in subgroup.elements().iter().enumerate() {
        indices.push(module.group.index_of(e).ok_or(Error::NotASubgroup(i))?);
    }
    let action = indices.iter().map(|&g| module.action[g].clone()).collect();
    let sub_module = Arc::new(GModule::with_action(subgroup, module.modulus, module.rank, action)?);
    let values = indices.iter().map(|&g| z.values[g].clone()).collect();
    Cocycle::new(sub_module, values)
}

/// Inflation of a cocycle on a quotient `Q` along a surjection `G -> Q`; the
/// returned cocycle lives on the pulled-back module.
pub fn inflate(z: &Cocycle, group: Arc<MatGroup>, proj: &[usize]) -> Result<Cocycle> {
    let target = Arc::new(GModule::pulled_back(group, &z.module, proj)?);
    inflate_into(z, &target, proj)
}

/// Inflation into a given `G`-module, which must act through `proj`: in
/// particular the kernel of `proj` has to act trivially.
pub fn inflate_into(z: &Cocycle, target: &Arc<GModule>, proj: &[usize]) -> Result<Cocycle> {
    let source = &z.module;
    if target.modulus != source.modulus {
        return Err(Error::ModulusMismatch(target.modulus, source.modulus));
    }
    if target.rank != source.rank {
        return Err(Error::DimensionMismatch {
            expected: source.rank,
            found: target.rank,
        });
    }
    check_projection(&target.group, &source.group, proj)?;
    for (g, &q) in proj.iter().enumerate() {
        if target.action[g] != source.action[q] {
            return Err(if q == 0 {
                Error::KernelActsNontrivially(g)
            } else {
                Error::ActionMismatch(g)
            });
        }
    }
    let values = proj.iter().map(|&q| z.values[q].clone()).collect();
    Cocycle::new(target.clone(), values)
}

/// One summand of a block-diagonal module.
#[derive(Clone, Debug)]
pub struct BlockComponent {
    pub offset: usize,
    pub size: usize,
    /// The image of `G` acting on this block.
    pub group: Arc<MatGroup>,
    /// Element map `G -> group`.
    pub projection: Vec<usize>,
    pub module: Arc<GModule>,
    pub h1_loc: CohomologyResult,
}

#[derive(Clone, Debug)]
pub struct DirectSumSplit {
    pub total: CohomologyResult,
    pub blocks: Vec<BlockComponent>,
    /// Whether the elementary divisors of the total `H^1_loc` are the
    /// union of those of the blocks.
    pub matches: bool,
}

impl DirectSumSplit {
    /// The component cocycle `Z^i` on block `i`, defined by
    /// `Z^i_{phi_i(g)} = pi_i(Z_g)`. Fails when `pi_i(Z)` does not factor
    /// through the block image.
    pub fn component(&self, z: &Cocycle, i: usize) -> Result<Cocycle> {
        let block = &self.blocks[i];
        let mut values: Vec<Option<Vec<u64>>> = vec![None; block.group.order()];
        for (g, &q) in block.projection.iter().enumerate() {
            let v = z.values[g][block.offset..block.offset + block.size].to_vec();
            match &values[q] {
                Some(prev) if *prev != v => return Err(Error::ActionMismatch(g)),
                _ => values[q] = Some(v),
            }
        }
        let values = values
            .into_iter()
            .map(|v| v.expect("projection is surjective"))
            .collect();
        Cocycle::new(block.module.clone(), values)
    }
}

/// Splits a block-diagonal module into its summands and compares
/// `H^1_loc(G, M)` with the sum of `H^1_loc(G_i, M_i)` over the block images.
pub fn split_direct_sum(module: &Arc<GModule>, block_sizes: &[usize]) -> Result<DirectSumSplit> {
    let total_rank: usize = block_sizes.iter().sum();
    if total_rank != module.rank || block_sizes.contains(&0) {
        return Err(Error::DimensionMismatch {
            expected: module.rank,
            found: total_rank,
        });
    }
    let mut offsets = Vec::with_capacity(block_sizes.len());
    let mut acc = 0;
    for &b in block_sizes {
        offsets.push(acc);
        acc += b;
    }
    let block_of = |i: usize| offsets.iter().rposition(|&o| o <= i).expect("offset 0 exists");
    for (g, a) in module.action.iter().enumerate() {
        for i in 0..module.rank {
            for j in 0..module.rank {
                if block_of(i) != block_of(j) && a.get(i, j) != 0 {
                    return Err(Error::NotBlockDiagonal(g));
                }
            }
        }
    }

    let total = h1_loc(module)?;
    let mut blocks = Vec::with_capacity(block_sizes.len());
    for (&offset, &size) in offsets.iter().zip(block_sizes) {
        let s = module.group.generators().len();
        let group = if s == 0 {
            MatGroup::trivial(module.modulus, size)?
        } else {
            let gens = (0..s)
                .map(|j| module.generator_action(j).diagonal_block(offset, size))
                .collect();
            MatGroup::generated_by(gens)?
        };
        let group = Arc::new(group);
        let projection = module
            .action
            .iter()
            .map(|a| {
                group
                    .index_of(&a.diagonal_block(offset, size))
                    .ok_or(Error::NotAnElement)
            })
            .collect::<Result<Vec<_>>>()?;
        let block_module = Arc::new(GModule::natural(group.clone()));
        let local = h1_loc(&block_module)?;
        blocks.push(BlockComponent {
            offset,
            size,
            group,
            projection,
            module: block_module,
            h1_loc: local,
        });
    }
    let mut union: Vec<u64> = blocks
        .iter()
        .flat_map(|b| b.h1_loc.structure.elementary_divisors())
        .collect();
    union.sort_unstable();
    let matches = union == total.structure.elementary_divisors();
    Ok(DirectSumSplit { total, blocks, matches })
}

/// The image `{ g v - v }` of a single element, as a Howell basis.
pub fn element_image(module: &GModule, g: usize) -> Result<SubmoduleBasis> {
    image_of_minus_identity(&module.action[g])
}
