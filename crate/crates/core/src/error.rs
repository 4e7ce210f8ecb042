use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient window for {law}: N={n}, margin={margin}")]
    InsufficientWindow { law: String, n: i64, margin: i64 },

    #[error("ill-posed template: {0}")]
    IllPosedTemplate(String),

    #[error("unbound template parameters: {0}")]
    UnboundParams(String),

    #[error("key {key} does not belong to {family}")]
    ForeignKey { key: String, family: String },

    #[error("form is degenerate on the window: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("input does not satisfy precondition: {0}")]
    Precondition(String),

    #[error("operator rejected: {0}")]
    Rejected(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular system: {0}")]
    Singular(String),

    #[error("unknown object id {0:?}")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
