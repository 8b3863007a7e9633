use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("join is not allowed here: {0}")]
    JoinNotAllowed(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("law `{law}` fails: {detail}")]
    LawViolation { law: String, detail: String },

    #[error("unknown node or point {0}")]
    UnknownNode(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
