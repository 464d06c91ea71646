use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("invalid simulation configuration: {0}")]
    InvalidConfig(String),
    #[error("sampler {sampler} requires an integer q, got {q}")]
    NonIntegerQ { sampler: &'static str, q: f64 },
    #[error("insufficient statistics: {0}")]
    InsufficientStatistics(String),
}

pub type Result<T> = std::result::Result<T, McError>;
