use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph too large: {n} vertices (limit {limit})")]
    GraphTooLarge { n: usize, limit: usize },
    #[error("insufficient order: need {needed} coefficients, have {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("unbounded constant-term window: {0}")]
    UnboundedWindow(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
