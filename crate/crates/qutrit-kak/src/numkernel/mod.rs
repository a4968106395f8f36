//! Dense complex linear algebra on small square matrices (d ≤ 3^5).

mod decomp;
mod matrix;
pub mod random;

pub use decomp::{
    csd, det, hermitian_eig, nearest_unitary, require_unitary, svd, unitary_distance, unitary_eig, CsdResult,
    EigResult, Lu, Svd, UNITARITY_TOL,
};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumError {
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("partition p={p} exceeds q={q}")]
    InvalidPartition { p: usize, q: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has non-finite entries")]
    NonFinite,
}
