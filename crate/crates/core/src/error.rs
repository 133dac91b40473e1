use thiserror::Error;

/// Errors raised by the arithmetic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primary associate: norm {0} is divisible by 3")]
    NoPrimaryAssociate(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not cube-free (or is less than 2)")]
    NotCubeFree(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ideals belong to different fields")]
    AmbientMismatch,
    #[error("class group computation exhausted its budget: {0}")]
    BudgetExhausted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
