use thiserror::Error;

/// Errors raised by the deterministic numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the domain of {op}: {reason}")]
    Domain {
        op: &'static str,
        value: f64,
        reason: String,
    },
    #[error("quadrature did not converge after {subdivisions} subdivisions (estimated error {error:e})")]
    Convergence { subdivisions: usize, error: f64 },
    #[error("integrand is not negligible at the cutoff t_max = {t_max} (|f| = {magnitude:e})")]
    Truncation { t_max: f64, magnitude: f64 },
    #[error("invalid quadrature policy: {0}")]
    InvalidPolicy(String),
    #[error("no sign change on [{lo}, {hi}] while solving {what}")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, value: f64, reason: impl Into<String>) -> Error {
    Error::Domain {
        op,
        value,
        reason: reason.into(),
    }
}
