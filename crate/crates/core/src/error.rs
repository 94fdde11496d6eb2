use thiserror::Error;

/// Errors raised by the workbench.
///
/// Failing relation checks are not errors; they are reported through
/// [`crate::report::Report`] entries instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An arithmetic operation left its domain (zero base with a negative exponent, division by zero).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A parameter quadruple violates the hypothesis of the construction it was handed to.
    #[error("constraint violation: {0}")]
    Constraint(String),
    /// A caller broke an operation's precondition (wrong parity, non-scalar central action, ...).
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Two computations that must agree did not. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
    /// A reconstructed reference module could not be certified isomorphic to the input.
    #[error("classification failed: {0}")]
    Classification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
