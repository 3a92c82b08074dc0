//! Exact linear algebra over ℚ and GF(p).

mod matrix;
mod rational;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::Matrix;
pub use rational::{ParseRationalError, Rational};
pub use scalar::{is_prime, Field, Scalar, MAX_MODULUS};
pub use sparse::SparseMatrix;
pub use subspace::{unit_vector, Echelon, Subspace};
