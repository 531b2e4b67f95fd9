//! NSGA-II with interchangeable non-dominated ranking backends.
//!
//! The crate is organized around one generational loop ([`evolution`])
//! that can be driven by any of four rankers ([`ranking::Ranker`]):
//! an all-pairs peeling oracle, the classic NSGA-II fast non-dominated
//! sort, a presort-and-sweep front builder, and a position-sum scheme that
//! ranks by the sum of per-objective sorted positions in `O(MN log N)`.
//!
//! [`genesel`] provides a three-objective gene-subset selection problem
//! (subset size, leave-one-out training errors, held-out test errors) built
//! on a weighted-voting classifier, and [`dataio`] loads expression
//! matrices and label files for it.

pub mod dataio;
pub mod error;
pub mod evolution;
pub mod genesel;
pub mod problems;
pub mod ranking;
pub mod types;

pub use error::{Error, Result};
pub use evolution::{run, EvolutionConfig, RunResult};
pub use problems::Problem;
pub use ranking::Ranker;
pub use types::{
    compare, dominance, dominates, Dominance, Genome, Individual, ObjectiveVector, Population,
};
