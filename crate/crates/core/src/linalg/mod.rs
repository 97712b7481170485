//! Exact integer and rational matrix algebra.

mod int_matrix;
mod prefix_basis;
mod rat_matrix;
mod smith;

pub use int_matrix::IntMatrix;
pub use prefix_basis::{congruence, prefix_nonsingular_basis};
pub use rat_matrix::{rational_inverse, unimodular_inverse, RatMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
