//! Decomposition of a cellular algebra by a family of orthogonal
//! idempotents, and the corner algebras `e_i A e_i`.

mod decomposition;
mod theorems;

pub use decomposition::{
    check_assumptions, AssumptionReport, AssumptionViolation, Condition, IdempotentDecomposition, IdempotentFamily,
    LocalizedAlgebra,
};
pub use theorems::{
    GramDirectSumReport, HomVanishingReport, LocalHom, LocalizedBlocks, RadicalReport, SemisimpleEquivalenceReport,
    SimpleDimReport,
};
