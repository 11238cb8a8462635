//! Crate-wide error type.
//!
//! A single flat enum keeps cross-module plumbing simple; variants carry the
//! names used by the mathematical preconditions they guard.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("scale factor must be nonnegative")]
    InvalidScale,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("cone is not smooth")]
    NotSmooth,

    #[error("ray index {0} is not a ray of the fan")]
    UnknownDivisor(usize),

    #[error("class is not big")]
    NotBig,

    #[error("zero polynomial has no valuation")]
    ZeroSection,

    #[error("lattice point enumeration exceeds budget of {budget} (needs {needed})")]
    TooLarge { budget: u64, needed: u64 },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("valuation vector must be componentwise nonnegative")]
    InvalidValuation,

    #[error("axis index {0} out of range for dimension {1}")]
    BadAxis(usize, usize),

    #[error("parameter t={t} outside open interval ({lo}, {hi})")]
    OutOfRange { t: String, lo: String, hi: String },

    #[error("residual class is not nef")]
    UnsupportedResidual,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
