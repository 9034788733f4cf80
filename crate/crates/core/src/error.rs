use thiserror::Error;

/// Errors raised by the domain, kernel and estimate routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid domain specification: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point lies outside the domain: {0}")]
    OutsideDomain(String),

    #[error("division by zero: coordinate {index} vanishes")]
    ZeroCoordinate { index: usize },

    #[error("map evaluated at a pole: {0}")]
    Pole(String),

    #[error("integral is not finite: {0}")]
    NonIntegrable(String),

    #[error("series did not converge within {terms} terms (r = {r})")]
    NonConvergence { terms: usize, r: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
