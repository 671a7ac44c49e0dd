//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Field construction was asked for an order that is not a prime power
    /// or exceeds the table-backed maximum of 16.
    #[error("unsupported field order {0}: supported orders are prime powers q <= 16")]
    UnsupportedField(u64),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),

    #[error("element {element} out of range for GF({q})")]
    InvalidElement { element: u64, q: u64 },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would produce more subspaces than the configured cap.
    #[error("enumeration too large: {count} subspaces exceed cap {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("index {index} out of range for system of {len} pairs")]
    InvalidIndex { index: usize, len: usize },

    /// A set element does not fit into the requested ambient dimension.
    #[error("ambient dimension {n} too small: set element {element} requires n >= {element}")]
    AmbientTooSmall { element: u32, n: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A provable fact failed to check out; this signals a bug in the
    /// implementation, never in the mathematics.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
