//! Exact linear algebra over `Z/mZ`.

pub mod arith;
mod howell;
mod matrix;
mod smith;

pub use howell::{howell_form, kernel, left_kernel, solve_linear, LinearSolution, Membership, SubmoduleBasis};
pub use matrix::ResidueMatrix;
pub use smith::{quotient_structure, quotient_with_generators, smith_normal_form, AbelianStructure, SmithForm};
