use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data failed a validity check (trace, hermiticity, sign).
    #[error("validation error: {0}")]
    Validation(String),

    /// The operation was called outside the conditions it is exact for.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Matrix or vector dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The adaptive integrator could not make progress.
    #[error("step size underflow at t = {t} (h = {h:e}); system may be stiff")]
    Stiffness { t: f64, h: f64 },

    /// The right-hand side produced a non-finite value.
    #[error("non-finite value in right-hand side at t = {t}")]
    Propagation { t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
