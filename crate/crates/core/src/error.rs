//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Malformed input: wrong dimensions, non-finite entries, wrong
    /// matrix shape for the requested operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input outside the mathematical domain of the operation
    /// (e.g. a logarithm argument with `‖A − I‖ ≥ 1`, or `ξ = 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// The generator violates the same-sign hypothesis on its symmetric
    /// part, so the orbit parameterization is not guaranteed well-posed.
    #[error("group hypothesis violated: {0}")]
    Hypothesis(String),

    /// An iterative kernel failed to converge; the message carries
    /// residual diagnostics.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// The requested method does not apply to this input kind.
    #[error("method not applicable: {0}")]
    Method(String),

    /// A truncated integral could not be certified to the requested
    /// tolerance.
    #[error("truncation uncertainty: {0}")]
    Truncation(String),

    /// A condition that validated inputs should have made impossible.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
