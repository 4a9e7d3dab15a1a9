use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum CkError {
    /// The graph itself violates a structural invariant (duplicate ids,
    /// dangling endpoints, empty vertex set, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Two values that must share a base graph do not.
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),

    /// Exact and float scalars were mixed in one operation.
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    /// The requested normal form needs a (GA2) expansion at a sink,
    /// which does not exist.
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    /// A precondition on the arguments was violated.
    #[error("usage error: {0}")]
    Usage(String),

    /// Syntax error in one of the text formats.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CkError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        CkError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CkError>;
