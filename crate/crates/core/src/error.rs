//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by field construction, parsing, model computation and L-series evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not a valid t-motive: {0}")]
    NotMotive(String),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("working precision {0} exhausted")]
    InsufficientPrecision(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("motive file: {0}")]
    File(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of internal invariants, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
