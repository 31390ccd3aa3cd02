use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed caller input: node ids out of range, bad walks, empty source sets.
    #[error("input error: {0}")]
    Input(String),
    /// A construction parameter outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A construction invariant failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("ledger does not match parameters: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn parameter<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
