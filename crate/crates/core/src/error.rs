use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("denominator has zero constant term; not a unit in the power-series ring")]
    NonUnitDenominator,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),
    #[error("family parameter k must be at least 2, got {0}")]
    FamilyDomain(u64),
    /// A builder produced something the theorem rules out. Never caused by user input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
