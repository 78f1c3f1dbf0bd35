//! Instances, phase grids and the dependency-ordered check graph.

pub mod checks;
pub mod graph;
pub mod grid;
pub mod instances;
pub mod report;
pub mod run;

pub use checks::{build_check_graph, registry_names};
pub use graph::{CheckContext, CheckGraph, CheckNode};
pub use grid::phase_grid;
pub use instances::{diagonal_instance, random_instance};
pub use report::{CheckReport, CheckResult, CheckStatus, Tally};
pub use run::run_suite;
