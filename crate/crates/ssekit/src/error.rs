use thiserror::Error;

/// Crate-wide error type. Verification *reports* (which record where a
/// certificate fails) are not errors; `Error` covers malformed inputs,
/// violated preconditions, and constructions whose existence arguments
/// ran out of room (positivity margins, refinement depth).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("positivity margin exhausted: {0}")]
    Margin(String),
    #[error("refinement depth exceeded: {0}")]
    Depth(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
