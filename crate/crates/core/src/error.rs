use thiserror::Error;

/// Errors surfaced by the exact layers.
///
/// `Usage` marks violated preconditions or malformed input; `Integrity`
/// marks a computation that contradicts an invariant the theory guarantees,
/// which should never be silently repaired.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("integrity: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
