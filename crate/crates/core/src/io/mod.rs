//! On-disk algebra files and machine-readable reports.

mod file;
mod report;
mod spec;

pub use file::{
    build_cached, sha256_hex, AlgebraBody, AlgebraFile, DatumJson, IdempotentsJson, PartitionJson, ProductJson, Terms,
    FORMAT_VERSION,
};
pub use report::{
    run_report, ReportDocument, ReportOptions, Section, SectionResult, Status, GRAM_RESAMPLES, MODULE_AXIOM_PAIRS,
    REGULAR_MODULE_CAP,
};
pub use spec::{build, build_bubble_from, AlgebraSpec, Built, Family, MAX_PARTITION_DIM};
