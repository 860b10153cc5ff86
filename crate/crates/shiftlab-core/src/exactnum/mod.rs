//! Scalar arithmetic (exact complex-rational and complex-double modes) and
//! the finite-dimensional linear algebra everything else is built on.
//!
//! Exact mode never materializes square roots unless the radicand is a
//! perfect rational square; computations that would need irrational data
//! (eigenvector norms, non-rational eigenvalues) transparently fall back to
//! Float mode and say so.

mod matrix;
mod policy;
mod scalar;
mod solve;
mod spectral;

pub use matrix::{FinMatrix, FinVector};
pub use policy::TolerancePolicy;
pub use scalar::{Mode, Scalar};
pub use solve::{
    express_in_span, gram_schmidt, invert, null_space_basis, orth_basis_of_range, psd_check,
    psd_witness, rank_of, rref, solve_linear,
};
pub use spectral::{char_poly, hermitian_pairs, spectral_rank_one_decomp, SpectralDecomp};

use thiserror::Error;

/// Errors surfaced by the linear-algebra layer.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum NumError {
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("matrix is singular")]
    Singular {
        /// Exact kernel vector in Exact mode; best-effort in Float mode.
        witness: FinVector,
    },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("{0} is not a perfect rational square")]
    NotPerfectSquare(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
}
