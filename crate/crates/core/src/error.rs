use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires the monomial basis: {0}")]
    WrongBasis(&'static str),

    #[error("clearing exponent {bound} is below the polynomial degree {degree}")]
    DegreeBound { degree: u32, bound: u32 },

    #[error("series has no termination witness")]
    NonTerminating,

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point outside the support: {0}")]
    OutsideSupport(String),

    #[error("index exceeds the truncation depth: {0}")]
    Truncation(String),

    #[error("malformed partition: {0}")]
    Partition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("tolerance {tolerance:e} not reached within {budget} terms")]
    Budget { tolerance: f64, budget: usize },

    #[error("not available: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
