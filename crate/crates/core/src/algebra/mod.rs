//! Dense matrices and univariate polynomials over a [`FiniteField`](crate::galois::FiniteField).

mod matrix;
mod poly;

pub use matrix::Matrix;
pub use poly::Poly;
