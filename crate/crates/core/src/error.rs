use thiserror::Error;

/// Errors raised while building or combining models.
///
/// Decision procedures never use this type to report a negative answer;
/// that is what [`crate::Verdict::Fails`] is for.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("backend mismatch: {0}")]
    Backend(String),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no positivity functional found for {0}; supply one explicitly")]
    NoFunctional(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;
