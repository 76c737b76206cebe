use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scalar has half-integer powers of q: {0}")]
    HalfPower(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("elements come from different presentation contexts")]
    MixedContext,
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("twist condition failed: {0}")]
    TwistCondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
