//! Exact first cohomology and first *local* cohomology of finite matrix
//! groups acting on modules `(Z/mZ)^r`.
//!
//! The crate is layered bottom-up:
//!
//! * [`zmod`]: residue matrices, Howell-form submodules, linear solving and
//!   finite abelian group structure of quotients.
//! * [`matgroup`]: breadth-first enumeration of finite matrix groups with
//!   Cayley bookkeeping and the structural queries used by the cohomology
//!   layer.
//! * [`cohomology`]: cocycles, coboundaries, `H^1`, the local-condition
//!   filter and `H^1_loc`, restriction, inflation and direct-sum splitting.
//! * [`scenarios`]: constructors for the explicit groups and cocycles that
//!   motivate the library (stabilizer families, the 2-adic counterexample,
//!   restriction of scalars from `F_{p^2}` and its Galois-ring lift).
//! * [`eichler`]: Legendre symbols, the CRT search for a discriminant `d`
//!   and prime splitting in `Q(sqrt d)`.
//! * [`oracle`]: brute-force enumeration of all maps `G -> M`, used to
//!   cross-check the linear-algebra pipeline on tiny instances.
//! * [`sampling`]: random groups for property checks and parameter sweeps.

pub mod cohomology;
pub mod eichler;
mod error;
pub mod matgroup;
pub mod oracle;
pub mod sampling;
pub mod scenarios;
pub mod zmod;

pub use cohomology::{Cocycle, CohomologyResult, GModule};
pub use error::{Error, Result};
pub use matgroup::MatGroup;
pub use zmod::{AbelianStructure, ResidueMatrix, SubmoduleBasis};
