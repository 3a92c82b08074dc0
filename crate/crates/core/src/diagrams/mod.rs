//! Diagram calculus and the example algebras: matrix algebras, a quiver
//! algebra, Temperley–Lieb, bubble and multi-colour partition algebras.

mod checks;
mod coloured;
mod planar;
mod set_partition;
mod small;

pub use checks::{
    build_partition_algebra, check_bubble_localization, check_localization_iso, check_single_colour_bubble, check_tensor_iso,
    corner_algebra, oracle_semisimple_partition, partition_algebra_dim, PartitionOracle, PlainPartitionAlgebra,
    TensorIsoReport, DEFAULT_ORACLE_CAP,
};
pub use coloured::{
    all_coloured_diagrams, build_multicolour_partition, colour_name, colourings, compose_coloured, parse_colour,
    ColouredDiagram, IdempotentCheck, PartitionAlgebra,
};
pub use planar::{build_bubble, build_tl, coloured_half_diagrams, Bubble, HalfDiagram, Mark, Matching, TemperleyLieb};
pub use set_partition::{all_set_partitions, compose_set_partitions, restricted_growth_strings, SetPartition};
pub use small::{build_matrix_algebra, build_quiver_example};
