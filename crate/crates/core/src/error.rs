use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A mathematical precondition failed (frozen mutation, non-divisibility, ...).
    #[error("{0}")]
    Domain(String),
    /// Malformed text or file input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not divisible by the given element")]
    NotDivisible(String),
    #[error("not Laurent in the target chart: {0}")]
    NotLaurent(String),
    #[error("not pointed: {0}")]
    NotPointed(String),
    #[error("incompatible pair at row {row}, column {col}")]
    Incompatible { row: i64, col: i64 },
    /// A hypothesis of the quantization-extension lemma does not hold.
    #[error("extension hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
