//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root finder failed to converge within the iteration budget")]
    NonConvergence,
    #[error("series constant term violates the operation's precondition")]
    InvalidConstantTerm,
    #[error("operator or series is not invertible")]
    NotInvertible,
    #[error("polynomial degree {got} exceeds the convolution degree {max}")]
    DegreeExceeded { got: usize, max: usize },
    #[error("operands must both have degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("matrix dimensions are incompatible")]
    DimensionMismatch,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("collections must have equal length")]
    LengthMismatch,
    #[error("operation requires strictly positive roots")]
    NonPositiveRoots,
    #[error("operation requires real roots")]
    NonRealRoots,
    #[error("adaptive quadrature failed to reach the requested accuracy")]
    QuadratureFailure,
    #[error("lambda * m must be a positive integer")]
    NonIntegerLambdaM,
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("invalid input: {0}")]
    Invalid(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
