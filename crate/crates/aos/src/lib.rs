//! Command-line front end for `aos-core`: JSON verification reports with CSV
//! and markdown projections, Gram dumps and Schur tables.

pub mod cli;
pub mod render;
pub mod report;

pub use cli::{parallel_map, run, verify_case, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
pub use report::{InequalityResult, Outcome, ReportDocument, SchurFields, ARTIFACT_VERSION};
