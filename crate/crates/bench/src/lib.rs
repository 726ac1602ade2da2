//! Experiment runner and reporting for chance-constrained submodular
//! maximization benchmarks.

pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod stats;

pub use config::{BoundPolicy, ExperimentConfig, FileConfig, ProblemSpec};
pub use error::{BenchError, Result};
pub use runner::{run_experiment, run_on, Cell, ExperimentOutput, SummaryRow};
