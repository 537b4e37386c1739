use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 2 <= m < 2^63")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),
    #[error("submodule is not contained in the ambient module")]
    NotContained,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("generator {index} not invertible mod {modulus}")]
    NotInvertible { index: usize, modulus: u64 },
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("matrix is not an element of the group")]
    NotAnElement,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid module rank {0}")]
    InvalidRank(usize),
    #[error("cocycle identity fails at element {element}, generator {generator}")]
    NotACocycle { element: usize, generator: usize },
    #[error("the action is not a homomorphism at element {element}, generator {generator}")]
    NotAHomomorphism { element: usize, generator: usize },
    #[error("map is not surjective onto the quotient")]
    NotSurjective,
    #[error("kernel element {0} acts nontrivially on the module")]
    KernelActsNontrivially(usize),
    #[error("actions disagree at element {0}")]
    ActionMismatch(usize),
    #[error("subgroup element {0} does not lie in the ambient group")]
    NotASubgroup(usize),
    #[error("element {0} is not block-diagonal for the given block sizes")]
    NotBlockDiagonal(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("element {0} violates the expected shape")]
    ShapeViolation(usize),
    #[error("polynomial x^2 + {c1}x + {c0} is reducible mod {p}")]
    ReduciblePolynomial { p: u64, c0: u64, c1: u64 },
    #[error("p = {p} divides {what}")]
    Divides { p: u64, what: &'static str },
    #[error("no solution up to bound {0}")]
    NoSolutionBelowBound(u64),
    #[error("brute-force search space {0} exceeds the limit {1}")]
    SearchSpaceTooLarge(u128, u128),
}
