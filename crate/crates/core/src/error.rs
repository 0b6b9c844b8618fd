use crate::interval::Interval;

/// Failure modes shared by every stage of the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A model that must be positive has a range touching zero.
    #[error("positivity check failed on {cell}: model range {range}")]
    Positivity { cell: String, range: Interval },
    #[error("matrix not verifiably positive definite: {0}")]
    Definiteness(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    Solver { iterations: usize, residual: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
