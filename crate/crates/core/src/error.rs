use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("extension degree must be positive")]
    ZeroDegree,

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    ReducibleModulus(Vec<u32>),

    #[error("field lacks primitive {m}-th roots of unity ({m} does not divide {order})")]
    MissingRootOfUnity { m: u64, order: u64 },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("signature {0} is not self-dual")]
    NotSelfDual(String),

    #[error("cocycle condition fails for exponents ({0}, {1})")]
    InvalidCocycle(usize, usize),

    #[error("flag lies outside the domain of definition: {0}")]
    OutsideDomain(String),

    #[error("fiber coordinates are off the kernel of F")]
    OffKernel,

    #[error("lift for exponent {0} is not block-diagonal")]
    NonBlockLift(usize),

    #[error("dimension-swapping automorphism for exponent {0} is not supported here")]
    DimensionSwapping(usize),

    #[error("h^(n!) is scalar; no splitting obtainable by this method")]
    ScalarPower,

    #[error("eigenvalues of the lift are not all in the field")]
    EigenvaluesNotInField,

    #[error("automorphism does not commute with the twisted action at exponent {0}")]
    DoesNotCommute(usize),

    #[error("element has infinite or undetermined order")]
    InfiniteOrder,

    #[error("zero argument: {0}")]
    Zero(String),

    #[error("algebra check failed: {0}")]
    AlgebraCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
