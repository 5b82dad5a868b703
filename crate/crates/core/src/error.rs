use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("basis vectors are linearly dependent")]
    DependentVectors,

    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("gram matrix is not reduced")]
    NotReduced,

    #[error("reference gram has class {found}, expected {expected}")]
    ClassMismatch { expected: String, found: String },

    #[error("rule {rule} does not apply at position {position}")]
    InapplicableRule { rule: String, position: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("rewriting exceeded {0} steps")]
    StepLimit(usize),

    #[error("reduction did not terminate within {0} iterations")]
    NoTermination(usize),

    #[error("invalid k = {0}, expected k >= 1")]
    InvalidK(i64),

    #[error("no reduced word of length {k} with exponents bounded by {bound}")]
    BoundTooSmall { k: usize, bound: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index t{index} out of range for a list of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("target length {target} has the wrong parity or is below the minimum {min}")]
    Parity { target: usize, min: usize },

    #[error("rewriting entered a cycle after {0} steps")]
    Cycle(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
