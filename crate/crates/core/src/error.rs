use bpvoa_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("table incomplete: no entry for the pair ({0}, {1}) in either order")]
    MissingEntry(String, String),
    #[error("table parse error at line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("state parse error: {0}")]
    State(String),
    #[error("k = -3 is the critical level; use the critical presentation")]
    CriticalLevel,
    #[error("the critical presentation only exists at k = -3")]
    NotCritical,
    #[error("twisted sector: z^{0} is not an integral power")]
    TwistedSector(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
