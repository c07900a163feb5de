//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Mixing series with different `m` or truncation order.
    #[error("incompatible series: {0}")]
    Incompatible(String),

    /// Structural misuse of an operation (bad index, wrong parity, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An inverse/log/exp precondition on the constant term failed.
    #[error("constant-term precondition failed: {0}")]
    ConstantTerm(String),

    /// The degree-by-degree linear system has no solution.
    #[error("inconsistent linear system at degree {degree} (residual magnitude {residual})")]
    Inconsistent { degree: u32, residual: f64 },

    /// Series evaluation outside the guaranteed convergence region, or a
    /// truncation tail too large to trust.
    #[error("convergence control violated: {0}")]
    Convergence(String),

    /// A candidate failed its verification suite where a passing one is required.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
