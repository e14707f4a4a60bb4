use thiserror::Error;

/// A broken internal invariant. Always a bug, never an answer about the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("internal invariant violation: {0}")]
pub struct InternalError(pub String);

impl InternalError {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        InternalError(msg.into())
    }
}
