//! Exact arithmetic backbone: dense polynomials, truncated power series and
//! dense matrices over any [`Scalar`](crate::scalar::Scalar).
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so the whole module is safe to share across threads.

mod matrix;
mod poly;
mod series;

pub use matrix::Matrix;
pub use poly::Poly;
pub use series::TruncSeries;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("series has zero constant term")]
    ZeroConstantTerm,
}
