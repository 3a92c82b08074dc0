//! Cellular data and the representation theory derived from it.

mod datum;
mod modules;
mod poset;
mod properties;
mod structure;

pub use datum::{validate_cell_datum, validate_with, Axiom, BasisTriple, CellDatum, ValidationOptions, ValidationReport, Violation};
pub use modules::{
    action_matrix, cell_module, gram_entry, gram_matrix, is_semisimple, lambda_zero, simple_dim, CellModuleRep, GramData,
    SemisimplicityReport,
};
pub use poset::CellPoset;
pub use properties::{check_gram_independence, check_module_axiom, PropertyReport};
pub(crate) use structure::blocks_from_decomposition;
pub use structure::{
    blocks, decomposition_matrix, hom_space, jacobson_radical, loewy_series, Blocks, CellularStructure, DecompositionMatrix,
    HomSpace, LoewyLayer, LoewySeries, TriangularityReport,
};
