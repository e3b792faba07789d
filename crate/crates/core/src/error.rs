use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("{context}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("{context}: matrix is not square ({rows}x{cols})")]
    NotSquare { context: &'static str, rows: usize, cols: usize },

    #[error("{context}: matrix is not Hermitian (defect {defect:.3e} exceeds tolerance {tolerance:.3e})")]
    NotHermitian { context: &'static str, defect: f64, tolerance: f64 },

    #[error("eigendecomposition failed to converge (residual {residual:.3e})")]
    EigenConvergence { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("coherent-state tail mass {tail:.3e} beyond n_max = {n_max} exceeds budget {budget:.1e}")]
    TailBudget { n_max: usize, tail: f64, budget: f64 },

    #[error("closed form undefined for zero coherent amplitude; use the generic Kraus path")]
    ZeroAmplitude,
}
