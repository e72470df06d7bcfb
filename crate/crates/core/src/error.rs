use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("ambient group mismatch: {0}")]
    AmbientMismatch(String),

    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infinite exponent: {0}")]
    InfiniteExponent(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("json error: {0}")]
    Json(String),
}
