//! Exact computations with cellular algebras: cell modules, Gram matrices,
//! decomposition matrices and blocks, idempotent localization, and the
//! diagram algebras used as examples.

pub mod algebra;
pub mod cellular;
pub mod diagrams;
pub mod error;
pub mod io;
pub mod linalg;
pub mod split;
pub mod union_find;

pub use algebra::{Algebra, Element, ModuleRep};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Rational, Scalar, Subspace};
