//! Constructors for the explicit groups, modules and cocycles that the
//! library is built to examine.
//!
//! * Stabilizer families over `Z/p^n` (odd `p`): groups of upper-triangular
//!   matrices `[[1, f], [0, c]]` fixing `(1, 0)`, their two-generator normal
//!   form, and parameter grids.
//! * The 2-adic counterexample: `(Z/8)^*` acting on `Z/8`, the cocycle
//!   `(0, 4, 4, 0)`, and the group `G_16 <= GL_2(Z/16)` reducing to the
//!   diagonal copy of `(Z/8)^*`.
//! * Restriction of scalars: 2x2 matrices over `F_{p^2}` (or its Galois-ring
//!   lift mod `p^2`) rewritten as 4x4 matrices over `Z/p` (or `Z/p^2`).

use std::sync::Arc;

use crate::cohomology::{inflate, Cocycle, GModule};
use crate::matgroup::MatGroup;
use crate::zmod::arith::{is_prime, mul_mod, neg_mod, valuation};
use crate::zmod::ResidueMatrix;
use crate::{Error, Result};

/// Stable scenario identifiers understood by the command-line driver.
pub const SCENARIO_NAMES: [&str; 4] = ["prop21-family", "dz-p2", "lemma51", "prop54-h2"];

/// Parameters of the stabilizer family `<delta, sigma>` over `Z/p^n` with
/// `delta = [[1, b], [0, 1 + p^i]]` and `sigma = [[1, p^e], [0, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilizerParams {
    pub p: u64,
    pub n: u32,
    pub i: u32,
    pub e: u32,
    pub b: u64,
}

impl StabilizerParams {
    pub fn new(p: u64, n: u32, i: u32, e: u32, b: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::InvalidParameters("p must be odd".into()));
        }
        if n == 0 || !(1..=n).contains(&i) || e > n {
            return Err(Error::InvalidParameters(format!(
                "need n >= 1, 1 <= i <= n, 0 <= e <= n (n={n}, i={i}, e={e})"
            )));
        }
        let m = p
            .checked_pow(n)
            .filter(|&m| m < crate::zmod::arith::MAX_MODULUS)
            .ok_or(Error::Overflow("p^n"))?;
        Ok(Self { p, n, i, e, b: b % m })
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn delta(&self) -> ResidueMatrix {
        let m = self.modulus();
        ResidueMatrix::new(m, 2, 2, vec![1, self.b, 0, (1 + self.p.pow(self.i)) % m]).expect("valid modulus")
    }

    pub fn sigma(&self) -> ResidueMatrix {
        let m = self.modulus();
        ResidueMatrix::new(m, 2, 2, vec![1, self.p.pow(self.e) % m, 0, 1]).expect("valid modulus")
    }
}

pub fn stabilizer_family_group(params: &StabilizerParams) -> Result<MatGroup> {
    MatGroup::generated_by(vec![params.delta(), params.sigma()])
}

/// Every `(i, e, b)` with `1 <= i <= n`, `0 <= e <= n` and
/// `b in {0, 1, p^e, p^e + 1}` (reduced mod `p^n`, duplicates removed).
pub fn stabilizer_grid(p: u64, n: u32) -> Result<Vec<StabilizerParams>> {
    let mut out = Vec::new();
    for i in 1..=n {
        for e in 0..=n {
            let m = p.pow(n);
            let pe = p.pow(e) % m;
            let mut bs = vec![0, 1 % m, pe, (pe + 1) % m];
            bs.sort_unstable();
            bs.dedup();
            for b in bs {
                out.push(StabilizerParams::new(p, n, i, e, b)?);
            }
        }
    }
    Ok(out)
}

/// Which of the two normal-form generators are nontrivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormKind {
    TwoGenerators,
    /// Every element is unipotent; only `sigma` is needed.
    UnipotentOnly,
    /// The unipotent part is trivial; only `delta` is needed.
    DeltaOnly,
    Trivial,
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub params: StabilizerParams,
    pub delta: ResidueMatrix,
    pub sigma: ResidueMatrix,
    pub kind: NormalFormKind,
    /// Set when `p^e | b` allowed replacing `delta` by its diagonal form.
    pub diagonalized: bool,
}

/// Recovers `(i, e, b, delta, sigma)` for a `p`-group of matrices
/// `[[1, f], [0, 1 + s p^k]]` over `Z/p^n`, `p` odd.
///
/// `i` is the least valuation of `c - 1` over non-unipotent elements, `p^e`
/// generates the unipotent part, and `delta` is the power of a level-`i`
/// element whose lower-right entry is exactly `1 + p^i`. The result is
/// checked to regenerate `group` element for element.
pub fn unitriangular_normal_form(group: &MatGroup, p: u64) -> Result<NormalForm> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidParameters("p must be odd".into()));
    }
    let m = group.modulus();
    let n = valuation(m, p).unwrap_or(0);
    if p.pow(n) != m || group.rank() != 2 {
        return Err(Error::InvalidParameters(format!("group is not over Z/{p}^n in rank 2")));
    }
    let one_plus = |k: u32| (1 + p.pow(k)) % m;

    let mut level: Option<(u32, usize)> = None;
    let mut e = n;
    for (idx, g) in group.elements().iter().enumerate() {
        let (f, c) = (g.get(0, 1), g.get(1, 1));
        if g.get(0, 0) != 1 || g.get(1, 0) != 0 || !(c + m - 1).is_multiple_of(p) {
            return Err(Error::ShapeViolation(idx));
        }
        if c == 1 {
            if let Some(v) = valuation(f, p) {
                e = e.min(v);
            }
        } else {
            let k = valuation(c - 1, p).expect("c != 1");
            if level.is_none_or(|(best, _)| k < best) {
                level = Some((k, idx));
            }
        }
    }

    let Some((i, gamma)) = level else {
        let params = StabilizerParams::new(p, n, n, e, 0)?;
        let kind = if e < n {
            NormalFormKind::UnipotentOnly
        } else {
            NormalFormKind::Trivial
        };
        return finish(group, params, kind, false);
    };

    // gamma^k has lower-right entry (1 + s p^i)^k; some k hits 1 + p^i.
    let target = one_plus(i);
    let mut delta_idx = gamma;
    while group.element(delta_idx).get(1, 1) != target {
        delta_idx = group.mul(delta_idx, gamma);
        if delta_idx == gamma {
            return Err(Error::ShapeViolation(gamma));
        }
    }
    let mut b = group.element(delta_idx).get(0, 1);
    let pe = p.pow(e) % m;
    let diagonalized = if pe == 0 { b == 0 } else { b.is_multiple_of(pe) };
    if diagonalized {
        b = 0;
    }
    let params = StabilizerParams::new(p, n, i, e, b)?;
    let kind = if e < n {
        NormalFormKind::TwoGenerators
    } else {
        NormalFormKind::DeltaOnly
    };
    finish(group, params, kind, diagonalized)
}

fn finish(group: &MatGroup, params: StabilizerParams, kind: NormalFormKind, diagonalized: bool) -> Result<NormalForm> {
    let regenerated = stabilizer_family_group(&params)?;
    if !regenerated.same_elements(group) {
        return Err(Error::InvalidParameters(
            "normal-form generators do not regenerate the group".into(),
        ));
    }
    Ok(NormalForm {
        delta: params.delta(),
        sigma: params.sigma(),
        params,
        kind,
        diagonalized,
    })
}

/// `(Z/8)^*` on `Z/8`, the locally trivial non-coboundary cocycle on it,
/// and the group `G_16` whose mod-8 image is the diagonal copy of `(Z/8)^*`.
#[derive(Clone, Debug)]
pub struct TwoAdicCounterexample {
    /// `(Z/8)^*` as 1x1 matrices, enumerated as `g_1, g_3, g_5, g_7`.
    pub units: Arc<MatGroup>,
    pub module: Arc<GModule>,
    /// `g_1, g_7 -> 0` and `g_3, g_5 -> 4`.
    pub cocycle: Cocycle,
    /// `<[[3, 8], [0, 1]], [[15, 0], [0, 1]]> <= GL_2(Z/16)`.
    pub g16: Arc<MatGroup>,
    /// Image of `g16` under reduction mod 8.
    pub g8: Arc<MatGroup>,
    /// Element map `g16 -> g8`.
    pub reduction: Vec<usize>,
    /// Element map `g8 -> units`, `diag(a, 1) -> a`.
    pub block: Vec<usize>,
}

impl TwoAdicCounterexample {
    /// Element map `g16 -> units`.
    pub fn projection(&self) -> Vec<usize> {
        self.reduction.iter().map(|&i| self.block[i]).collect()
    }

    /// The cocycle inflated to `g16` acting on `Z/8` through `projection`.
    pub fn inflated(&self) -> Result<Cocycle> {
        inflate(&self.cocycle, self.g16.clone(), &self.projection())
    }

    /// Index of `g_a` in `units`.
    pub fn unit(&self, a: u64) -> Option<usize> {
        self.units.index_of(&ResidueMatrix::new(8, 1, 1, vec![a]).ok()?)
    }
}

pub fn two_adic_counterexample() -> Result<TwoAdicCounterexample> {
    let scalar = |a: u64| ResidueMatrix::new(8, 1, 1, vec![a]);
    let units = Arc::new(MatGroup::generated_by(vec![scalar(3)?, scalar(5)?])?);
    let module = Arc::new(GModule::natural(units.clone()));
    let values = units
        .elements()
        .iter()
        .map(|g| vec![if matches!(g.get(0, 0), 3 | 5) { 4 } else { 0 }])
        .collect();
    let cocycle = Cocycle::new(module.clone(), values)?;

    let g16 = MatGroup::generated_by(vec![
        ResidueMatrix::from_rows(16, &[[3i64, 8], [0, 1]])?,
        ResidueMatrix::from_rows(16, &[[15i64, 0], [0, 1]])?,
    ])?;
    let (g8, reduction) = g16.reduce_modulus(8)?;

    let diagonal: Vec<ResidueMatrix> = [1, 3, 5, 7]
        .iter()
        .map(|&a| ResidueMatrix::new(8, 2, 2, vec![a, 0, 0, 1]))
        .collect::<Result<_>>()?;
    if g8.order() != diagonal.len() || !diagonal.iter().all(|d| g8.contains(d)) {
        return Err(Error::InvalidParameters(
            "G_16 mod 8 is not the diagonal copy of (Z/8)^*".into(),
        ));
    }
    let block = g8
        .elements()
        .iter()
        .map(|g| units.index_of(&g.diagonal_block(0, 1)).ok_or(Error::NotAnElement))
        .collect::<Result<Vec<_>>>()?;

    Ok(TwoAdicCounterexample {
        units,
        module,
        cocycle,
        g16: Arc::new(g16),
        g8: Arc::new(g8),
        reduction,
        block,
    })
}

/// An entry `a + b alpha` of a 2x2 matrix over `Z[alpha]/(p^k)`.
pub type RingEntry = (i64, i64);
pub type RingMatrix = [[RingEntry; 2]; 2];

/// `Z/p^k [x] / (x^2 + c1 x + c0)` with `k` in `{1, 2}`; for `k = 1` this is
/// `F_{p^2}`, for `k = 2` the unramified Galois ring of order `p^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisRingSpec {
    pub p: u64,
    pub exponent: u32,
    /// `(c0, c1)` for `x^2 + c1 x + c0`.
    pub min_poly: (u64, u64),
}

impl GaloisRingSpec {
    pub fn new(p: u64, exponent: u32, c0: u64, c1: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=2).contains(&exponent) {
            return Err(Error::InvalidParameters(format!(
                "exponent must be 1 or 2, got {exponent}"
            )));
        }
        let (c0, c1) = (c0 % p.pow(exponent), c1 % p.pow(exponent));
        if has_root_mod(p, c0, c1) {
            return Err(Error::ReduciblePolynomial { p, c0, c1 });
        }
        Ok(Self {
            p,
            exponent,
            min_poly: (c0, c1),
        })
    }

    /// The lexicographically smallest monic irreducible quadratic mod `p`,
    /// ordered by `(c1, c0)`: `x^2 + 1` for `p = 3`, `x^2 + 2` for `p = 5`.
    pub fn with_default_poly(p: u64, exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        for c1 in 0..p {
            for c0 in 0..p {
                if !has_root_mod(p, c0, c1) {
                    return Self::new(p, exponent, c0, c1);
                }
            }
        }
        unreachable!("an irreducible quadratic exists over every prime field")
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.exponent)
    }

    /// Multiplication by `alpha` on the basis `{1, alpha}`.
    pub fn companion(&self) -> ResidueMatrix {
        let m = self.modulus();
        let (c0, c1) = self.min_poly;
        ResidueMatrix::new(m, 2, 2, vec![0, neg_mod(c0, m), 1, neg_mod(c1, m)]).expect("valid modulus")
    }

    /// `a + b alpha` as the 2x2 matrix `a I + b C`.
    pub fn embed_entry(&self, (a, b): RingEntry) -> ResidueMatrix {
        let m = self.modulus();
        let (a, b) = (a.rem_euclid(m as i64) as u64, b.rem_euclid(m as i64) as u64);
        let c = self.companion();
        let entries = (0..4)
            .map(|k| {
                let diag = if k == 0 || k == 3 { a } else { 0 };
                (diag + mul_mod(b, c.entries()[k], m)) % m
            })
            .collect();
        ResidueMatrix::new(m, 2, 2, entries).expect("valid modulus")
    }

    /// A 2x2 ring matrix as a 4x4 matrix over `Z/p^k`.
    pub fn embed_matrix(&self, matrix: &RingMatrix) -> ResidueMatrix {
        let m = self.modulus();
        let mut entries = vec![0; 16];
        for (bi, row) in matrix.iter().enumerate() {
            for (bj, &entry) in row.iter().enumerate() {
                let block = self.embed_entry(entry);
                for a in 0..2 {
                    for b in 0..2 {
                        entries[(2 * bi + a) * 4 + 2 * bj + b] = block.get(a, b);
                    }
                }
            }
        }
        ResidueMatrix::new(m, 4, 4, entries).expect("valid modulus")
    }
}

fn has_root_mod(p: u64, c0: u64, c1: u64) -> bool {
    (0..p).any(|x| (mul_mod(x, x, p) + mul_mod(c1 % p, x, p) + c0 % p).is_multiple_of(p))
}

pub fn restriction_of_scalars_group(spec: &GaloisRingSpec, generators: &[RingMatrix]) -> Result<MatGroup> {
    let gens = generators.iter().map(|g| spec.embed_matrix(g)).collect();
    MatGroup::generated_by(gens)
}

/// `sigma(l1, l2) = [[1, l1 + l2 alpha], [0, 1]]` over `F_{p^2}`.
pub fn unipotent_sigma(l1: i64, l2: i64) -> RingMatrix {
    [[(1, 0), (l1, l2)], [(0, 0), (1, 0)]]
}

/// `sigma'(m1, m2) = [[1 + p m2, m1 + m2 alpha'], [0, 1]]` over the Galois
/// ring mod `p^2`.
pub fn lifted_sigma(p: u64, m1: i64, m2: i64) -> RingMatrix {
    [[(1 + p as i64 * m2, 0), (m1, m2)], [(0, 0), (1, 0)]]
}

/// The group `{ sigma(l1, l2) : l1, l2 in F_p }` in its 4x4 form over `Z/p`.
pub fn unipotent_extension_group(spec: &GaloisRingSpec) -> Result<MatGroup> {
    if spec.exponent != 1 {
        return Err(Error::InvalidParameters(
            "the unipotent group lives over F_{p^2}".into(),
        ));
    }
    restriction_of_scalars_group(spec, &[unipotent_sigma(1, 0), unipotent_sigma(0, 1)])
}

/// The group generated by `sigma'(1, 0)` and `sigma'(0, 1)` in its 4x4 form
/// over `Z/p^2`, with `alpha'` the companion matrix read mod `p^2`.
pub fn lifted_extension_group(spec: &GaloisRingSpec) -> Result<MatGroup> {
    if spec.exponent != 2 {
        return Err(Error::InvalidParameters("the lifted group lives over Z/p^2".into()));
    }
    restriction_of_scalars_group(spec, &[lifted_sigma(spec.p, 1, 0), lifted_sigma(spec.p, 0, 1)])
}

/// `(l1, l2)` of an element `sigma(l1, l2)`, read off its 4x4 form: the
/// first column of the upper-right block of `l1 I + l2 C` is `(l1, l2)`.
pub fn lambda_coordinates(g: &ResidueMatrix) -> (u64, u64) {
    (g.get(0, 2), g.get(1, 2))
}

/// The cocycle `sigma(l1, l2) -> (l2, 0)` on the unipotent extension group,
/// in coordinates `(x_0, x_1, y_0, y_1)` for `(x_0 + x_1 alpha, y_0 + y_1 alpha)`.
pub fn extension_cocycle(spec: &GaloisRingSpec) -> Result<Cocycle> {
    let group = Arc::new(unipotent_extension_group(spec)?);
    let module = Arc::new(GModule::natural(group.clone()));
    let values = group
        .elements()
        .iter()
        .map(|g| vec![lambda_coordinates(g).1, 0, 0, 0])
        .collect();
    Cocycle::new(module, values)
}

/// The lifted group over `Z/p^2` next to its mod-`p` counterpart.
#[derive(Clone, Debug)]
pub struct LiftedExtension {
    pub unipotent: Arc<MatGroup>,
    pub lifted: Arc<MatGroup>,
    /// Element map `lifted -> unipotent` by reduction mod `p`.
    pub reduction: Vec<usize>,
    /// Whether the reduction mod `p` of the lifted group is exactly the
    /// unipotent group.
    pub reduces_to_unipotent: bool,
    /// Whether `h e_1 - e_1 = p Z(h mod p)` for every lifted `h`, with `Z`
    /// the extension cocycle: the lift's action on the first basis vector
    /// is governed by the cocycle.
    pub first_column_matches_cocycle: bool,
}

pub fn lifted_extension(p: u64) -> Result<LiftedExtension> {
    let base = GaloisRingSpec::with_default_poly(p, 1)?;
    let (c0, c1) = base.min_poly;
    let spec = GaloisRingSpec::new(p, 2, c0, c1)?;
    let unipotent = unipotent_extension_group(&base)?;
    let lifted = lifted_extension_group(&spec)?;
    let (image, map) = lifted.reduce_modulus(p)?;
    let reduces_to_unipotent = image.same_elements(&unipotent);
    let m = spec.modulus();
    let first_column_matches_cocycle = lifted.elements().iter().all(|h| {
        let (_, l2) = lambda_coordinates(&h.reduce(p).expect("p divides p^2"));
        let shift: Vec<u64> = h
            .column(0)
            .iter()
            .zip([1, 0, 0, 0])
            .map(|(&x, e)| (x + m - e) % m)
            .collect();
        shift == vec![(p * l2) % m, 0, 0, 0]
    });
    let reduction = map
        .iter()
        .map(|&i| unipotent.index_of(image.element(i)).ok_or(Error::NotAnElement))
        .collect::<Result<Vec<_>>>();
    Ok(LiftedExtension {
        reduction: reduction.unwrap_or_default(),
        unipotent: Arc::new(unipotent),
        lifted: Arc::new(lifted),
        reduces_to_unipotent,
        first_column_matches_cocycle,
    })
}

/// `alpha^{-1}` in `F_{p^2}` as `(a, b)` for `a + b alpha`; `(0, 0, a, b)`
/// is a local witness of the extension cocycle at `sigma(0, 1)`.
pub fn alpha_inverse(spec: &GaloisRingSpec) -> Result<(u64, u64)> {
    let m = spec.modulus();
    let (c0, c1) = spec.min_poly;
    // alpha (alpha + c1) = -c0, so alpha^{-1} = -(alpha + c1) / c0
    let inv_c0 = crate::zmod::arith::inv_mod(c0, m).ok_or(Error::NotInvertible { index: 0, modulus: m })?;
    let scale = neg_mod(inv_c0, m);
    Ok((mul_mod(scale, c1, m), scale))
}
