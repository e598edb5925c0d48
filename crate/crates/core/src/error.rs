use thiserror::Error;

/// Failure modes shared by all numerical operations.
///
/// Payload values are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {what} (largest safe argument {limit})")]
    Range { what: String, limit: f64 },
    #[error("no convergence: {what} (achieved error estimate {estimate:e})")]
    Convergence { what: String, estimate: f64 },
    #[error("integration failed at x = {at}: {reason}")]
    Integration { at: f64, reason: String },
    #[error("seed point rejected: {0}")]
    Seed(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("unsupported potential shape: {0}")]
    UnsupportedShape(String),
    #[error("outside asymptotic regime: {0}")]
    AsymptoticRegime(String),
    #[error("grid error: {0}")]
    Grid(String),
    #[error("under-resolved grid: {0}")]
    Resolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
