//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by signal synthesis, decomposition, training, and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix or vector dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An input matrix that must be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation:.3e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    /// The eigensolver did not reach its off-diagonal target within the
    /// sweep budget (typically a sign of non-finite or pathological input).
    #[error("eigensolver failed to converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// Orthonormalization hit a row with (residual) norm below the rank
    /// tolerance.
    #[error("rank deficiency at row {row}: residual norm {norm:.3e}")]
    RankDeficient { row: usize, norm: f64 },

    /// A weight-vector norm exceeded the configured cap during training.
    #[error("training diverged at presentation {iteration}: |w[{neuron}]| = {norm:.3e}")]
    Divergence {
        iteration: usize,
        neuron: usize,
        norm: f64,
    },

    /// The requested experiment preset does not exist.
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
