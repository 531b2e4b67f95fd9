//! Gene-subset selection for two-class expression data.
//!
//! A genome selects genes. Its three minimized objectives are the subset
//! size, the leave-one-out mismatch count on the training samples, and the
//! mismatch count on the test samples of a classifier fitted on the full
//! training set. Both classifiers are weighted-voting models
//! (see [`voting`]).

mod dataset;
mod synth;
pub mod voting;

pub use dataset::{Class, Dataset, Split};
pub use synth::{synth_dataset, SynthParams};
pub use voting::{
    fit_model, loocv_errors, signal_to_noise, test_errors, weighted_vote_predict, GeneSubset,
    VotingModel,
};

use crate::error::{config, contract, Result};
use crate::problems::Problem;
use crate::types::{Genome, ObjectiveVector};

/// Average number of genes selected in a fresh genome on large datasets.
pub const INITIAL_SUBSET_SIZE: f64 = 25.0;

/// `(subset size, LOOCV errors, test errors)` for one genome.
///
/// The empty subset builds no classifier and scores the worst case:
/// `(0, |train|, |test|)`.
pub fn evaluate(genome: &GeneSubset, ds: &Dataset) -> Result<ObjectiveVector> {
    if genome.len() != ds.gene_count() {
        return Err(contract(format!(
            "genome has {} bits for {} genes",
            genome.len(),
            ds.gene_count()
        )));
    }
    let size = genome.count_ones();
    if size == 0 {
        return ObjectiveVector::new(vec![0.0, ds.train().len() as f64, ds.test().len() as f64]);
    }
    ObjectiveVector::new(vec![
        size as f64,
        loocv_errors(ds, genome)? as f64,
        test_errors(ds, genome)? as f64,
    ])
}

/// The gene-subset problem over a fixed dataset.
#[derive(Debug, Clone)]
pub struct GeneSelection {
    dataset: Dataset,
}

impl GeneSelection {
    pub fn new(dataset: Dataset) -> Result<Self> {
        if dataset.train().len() < 3 {
            return Err(config("gene selection needs at least 3 training samples"));
        }
        if dataset.test().is_empty() {
            return Err(config("gene selection needs at least one test sample"));
        }
        Ok(GeneSelection { dataset })
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }
}

impl Problem for GeneSelection {
    fn objective_count(&self) -> usize {
        3
    }

    fn genome_length(&self) -> usize {
        self.dataset.gene_count()
    }

    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector> {
        evaluate(genome, &self.dataset)
    }

    fn init_density(&self) -> f64 {
        (INITIAL_SUBSET_SIZE / self.dataset.gene_count() as f64).min(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth(seed: u64, separation: f64) -> Dataset {
        synth_dataset(&SynthParams {
            genes: 40,
            train: 38,
            test: 34,
            informative: 5,
            separation,
            seed,
        })
        .unwrap()
    }

    fn informative_subset(ds: &Dataset) -> GeneSubset {
        GeneSubset::from_bits((0..ds.gene_count()).map(|g| g < 5).collect())
    }

    #[test]
    fn empty_genome_scores_worst_case() {
        let ds = synth(1, 6.0);
        let v = evaluate(&Genome::zeros(40), &ds).unwrap();
        assert_eq!(v.values(), &[0.0, 38.0, 34.0]);
    }

    #[test]
    fn informative_genes_separate_perfectly() {
        for seed in 0..5 {
            let ds = synth(seed, 6.0);
            let v = evaluate(&informative_subset(&ds), &ds).unwrap();
            assert_eq!(v.values(), &[5.0, 0.0, 0.0], "seed {seed}");
        }
    }

    #[test]
    fn all_genes_objective_one_is_gene_count() {
        let ds = synth(2, 6.0);
        let all = Genome::from_bits(vec![true; 40]);
        let v = evaluate(&all, &ds).unwrap();
        assert_eq!(v[0], 40.0);
        assert!(v[1] <= 38.0 && v[2] <= 34.0);
    }

    #[test]
    fn evaluation_is_pure() {
        let ds = synth(3, 1.0);
        let g = Genome::from_bits((0..40).map(|i| i % 3 == 0).collect());
        assert_eq!(evaluate(&g, &ds).unwrap(), evaluate(&g, &ds).unwrap());
    }

    #[test]
    fn wrong_genome_length() {
        let ds = synth(4, 1.0);
        assert!(evaluate(&Genome::zeros(39), &ds).is_err());
    }

    #[test]
    fn init_density_targets_small_subsets() {
        let p = GeneSelection::new(synth(5, 1.0)).unwrap();
        assert_eq!(p.init_density(), 0.5);
        let big = synth_dataset(&SynthParams {
            genes: 1000,
            train: 8,
            test: 4,
            informative: 2,
            separation: 1.0,
            seed: 0,
        })
        .unwrap();
        assert_eq!(GeneSelection::new(big).unwrap().init_density(), 0.025);
    }
}
