use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("matrix is not Hermitian: entry ({row},{col}) differs from the conjugate of ({col},{row}) by {gap:e}")]
    NotHermitian { row: usize, col: usize, gap: f64 },
    #[error("matrix is not an orthogonal projector: |P^2 - P|_F = {0:e}")]
    NotProjector(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no convergence after {iterations} iterations (last step {residual:e})")]
    Convergence { iterations: usize, residual: f64 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("undecided within tolerance: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
