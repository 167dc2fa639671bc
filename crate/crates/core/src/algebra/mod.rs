//! Exact scalar, polynomial, localized-ring and matrix arithmetic.

mod calculus;
mod interp;
mod localized;
mod matrix;
mod poly;
mod scalar;

pub use calculus::{binomial_poly, delta, delta_inverse, from_binomial_basis, nabla, nabla_inverse, to_binomial_basis};
pub use interp::lagrange_interpolate;
pub use localized::LocalizedRatio;
pub use matrix::{Matrix, PolyMatrix};
pub use poly::UniPoly;
pub use scalar::{binomial, factorial, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not strictly upper triangular")]
    NotStrictlyUpperTriangular,
    #[error("matrix rows have inconsistent length")]
    NotSquare,
    #[error("interpolation point {index} repeats an earlier abscissa")]
    DuplicateAbscissa { index: usize },
}
