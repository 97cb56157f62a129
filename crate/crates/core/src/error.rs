use thiserror::Error;

/// Failures and early decisions produced by the library.
///
/// `Infeasible` is not a fault: it is the "no realization exists" verdict
/// surfaced by a preprocessing step. The driver turns it into
/// [`SolveOutcome::Infeasible`](crate::SolveOutcome::Infeasible).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrcError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = GrcError> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(GrcError::InvalidArgument(msg.into()))
}

pub(crate) fn infeasible<T>(msg: impl Into<String>) -> Result<T> {
    Err(GrcError::Infeasible(msg.into()))
}
