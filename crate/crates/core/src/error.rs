use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("invalid input: {0}")]
    Input(String),

    /// Malformed JSON; the message carries line and column.
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// A configurable enumeration bound was exceeded.
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Cap { what: String, cap: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
