//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by validation and by the numerical kernels.
///
/// Residuals are Frobenius-norm based and relative to the input scale
/// unless stated otherwise on the operation that raised them.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (relative residual {residual:.3e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not Hermitian (relative residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("conjugation involution fails: |T conj(T) - I| = {residual:.3e}")]
    NotInvolution { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("frame is not orthonormal (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("operator is not purely antilinear (complex-linear part norm {norm:.3e})")]
    NotAntilinear { norm: f64 },

    #[error("probe outputs incomplete or malformed at index {index}")]
    MissingProbe { index: usize },

    #[error("tolerance {0:.3e} must lie in (0, 1e-2]")]
    InvalidTolerance(f64),

    #[error("Schatten exponent p = {0} must satisfy 1 < p < inf")]
    InvalidSchattenExponent(f64),

    #[error("iteration failed to converge (residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    #[error("commutation hypothesis violated (residual {residual:.3e})")]
    HypothesisViolated { residual: f64 },

    #[error("vector is numerically zero")]
    ZeroVector,

    #[error("vector is not fixed by the conjugation (residual {residual:.3e})")]
    NotFixedVector { residual: f64 },

    #[error("atom index {index} out of range ({len} atoms)")]
    AtomIndexOutOfRange { index: usize, len: usize },

    #[error(
        "partition cap {cap} cannot meet the Schatten budget {budget:.3e} (achieved {achieved:.3e})"
    )]
    PartitionBudgetUnreachable { cap: u64, budget: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
