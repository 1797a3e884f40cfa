//! Exact arithmetic over Q(ω) and exact complex linear algebra.
//!
//! ω is a primitive cube root of unity, so ω² = −1 − ω and every value in
//! scope is a pair of arbitrary-precision rationals. Nothing in this module
//! touches floating point; orthogonality, ray identity, projectors and
//! observable products are all decided exactly.

mod linalg;
mod scalar;

pub use linalg::{inner_product, matrix_product, observable_from_ray, ray_equal, ExactMatrix, Ket};
pub(crate) use scalar::rational_to_f64;
pub use scalar::{EisensteinScalar, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the zero vector does not define a ray")]
    ZeroVector,
    #[error("product of an empty list of matrices")]
    EmptyProduct,
}
