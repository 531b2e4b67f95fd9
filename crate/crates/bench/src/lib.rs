//! Benchmark harness and command-line front end for the NSGA-II ranking
//! backends.

pub mod cli;
pub mod config;
pub mod error;
pub mod optimize;
pub mod problem;
pub mod timing;
pub mod validate;

pub use cli::run;
pub use config::{BenchConfig, ProblemSpec};
pub use error::{BenchError, Result};
pub use timing::{
    loglog_slope, run_scaling_experiment, time_ranker, CellSummary, ScalingReport, TimingRecord,
};
pub use validate::{validate, ValidationReport};
