use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("field mismatch: Q(sqrt {0}) and Q(sqrt {1}) cannot be combined")]
    FieldMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("no enumerator: {0}")]
    NoEnumerator(String),

    #[error("degenerate ring: {0}")]
    DegenerateRing(String),

    #[error("catalog entry `{entry}`: {msg}")]
    Catalog { entry: String, msg: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
