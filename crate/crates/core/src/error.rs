use thiserror::Error;

/// Failures of the algebra layer. None of them ever stands in for a wrong answer:
/// a computation either returns an exact result or one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("ambient mismatch: {0}")]
    OrderMismatch(String),
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("parse error at {line}:{col}: expected {expected}")]
    Parse { line: usize, col: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
