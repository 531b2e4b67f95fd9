//! Builds the optimization problem named by a config.

use nsga_core::dataio::{load_dataset, prefilter_top_k};
use nsga_core::genesel::{synth_dataset, GeneSelection, SynthParams};
use nsga_core::problems::{Lotz, RandomObjectives};
use nsga_core::Problem;

use crate::config::{BenchConfig, ProblemSpec};
use crate::error::Result;

/// Genes kept from a loaded expression file when `prefilter` is not set.
pub const DEFAULT_PREFILTER: usize = 50;

pub fn build_problem(cfg: &BenchConfig) -> Result<Box<dyn Problem>> {
    Ok(match &cfg.problem {
        ProblemSpec::Random { genome_length } => Box::new(RandomObjectives::new(
            cfg.objectives,
            *genome_length,
            cfg.seed,
        )?),
        ProblemSpec::Lotz { genome_length } => Box::new(Lotz::new(*genome_length)?),
        ProblemSpec::GeneselSynth {
            genes,
            train,
            test,
            informative,
            separation,
            data_seed,
        } => {
            let ds = synth_dataset(&SynthParams {
                genes: *genes,
                train: *train,
                test: *test,
                informative: *informative,
                separation: *separation,
                seed: *data_seed,
            })?;
            Box::new(GeneSelection::new(ds)?)
        }
        ProblemSpec::GeneselFiles {
            expression,
            labels,
            prefilter,
        } => {
            let ds = load_dataset(expression, labels)?;
            let k = prefilter.unwrap_or(DEFAULT_PREFILTER.min(ds.gene_count()));
            let ds = if k == ds.gene_count() {
                ds
            } else {
                prefilter_top_k(&ds, k)?
            };
            Box::new(GeneSelection::new(ds)?)
        }
    })
}
