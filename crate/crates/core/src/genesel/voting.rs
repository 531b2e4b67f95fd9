//! Golub-style weighted-voting classifier.
//!
//! For each selected gene `g` the model keeps the class means `mu1`, `mu2`
//! and population standard deviations `sd1`, `sd2` over the training
//! samples, a signal-to-noise weight `w = (mu1 - mu2) / (sd1 + sd2)` and a
//! midpoint threshold `b = (mu1 + mu2) / 2`. A sample votes
//! `sum_g w(g) * (x(g) - b(g))`; a non-negative total predicts class one.
//!
//! Class moments are accumulated relative to a per-gene shift (the gene's
//! value in the first training sample), so a constant gene yields means
//! exactly equal to that constant, a zero weight and a zero vote.

use super::dataset::{Class, Dataset};
use crate::error::{contract, Result};
use crate::types::Genome;

/// Denominator floor for the signal-to-noise ratio.
pub const SNR_EPSILON: f64 = 1e-9;

/// A bit per gene of the dataset; set bits select genes.
pub type GeneSubset = Genome;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Moments {
    n: usize,
    sum: f64,
    sumsq: f64,
}

impl Moments {
    fn add(&mut self, d: f64) {
        self.n += 1;
        self.sum += d;
        self.sumsq += d * d;
    }

    fn without(self, d: f64) -> Moments {
        Moments {
            n: self.n - 1,
            sum: self.sum - d,
            sumsq: self.sumsq - d * d,
        }
    }

    /// Mean and population standard deviation of the shifted values.
    fn mean_sd(self) -> (f64, f64) {
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = (self.sumsq / n - mean * mean).max(0.0);
        (mean, var.sqrt())
    }
}

/// Per-gene statistics of one model entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneVote {
    pub gene: usize,
    pub mean: [f64; 2],
    pub sd: [f64; 2],
    pub weight: f64,
    pub threshold: f64,
}

impl GeneVote {
    fn from_moments(gene: usize, shift: f64, m: [Moments; 2]) -> GeneVote {
        let (d1, sd1) = m[0].mean_sd();
        let (d2, sd2) = m[1].mean_sd();
        let mean = [shift + d1, shift + d2];
        let spread = sd1 + sd2;
        let denom = if spread < SNR_EPSILON {
            SNR_EPSILON
        } else {
            spread
        };
        GeneVote {
            gene,
            mean,
            sd: [sd1, sd2],
            weight: (d1 - d2) / denom,
            threshold: (mean[0] + mean[1]) / 2.0,
        }
    }

    #[inline]
    pub fn vote(&self, x: f64) -> f64 {
        self.weight * (x - self.threshold)
    }
}

/// Fitted weighted-voting classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct VotingModel {
    pub entries: Vec<GeneVote>,
}

/// Decision rule on a vote total. Zero goes to class one.
#[inline]
pub fn decide(total: f64) -> Class {
    if total >= 0.0 {
        Class::One
    } else {
        Class::Two
    }
}

impl VotingModel {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Vote total for a sample of `ds`.
    pub fn total(&self, ds: &Dataset, sample: usize) -> f64 {
        self.entries
            .iter()
            .map(|e| e.vote(ds.value(e.gene, sample)))
            .sum()
    }

    pub fn predict(&self, ds: &Dataset, sample: usize) -> Class {
        decide(self.total(ds, sample))
    }
}

/// Predicts the class of one sample given its expression over all genes.
pub fn weighted_vote_predict(model: &VotingModel, column: &[f64]) -> Result<Class> {
    if model.is_empty() {
        return Err(contract("prediction with an empty model"));
    }
    let mut total = 0.0;
    for e in &model.entries {
        let x = column.get(e.gene).ok_or_else(|| {
            contract(format!(
                "sample column has {} genes, model uses gene {}",
                column.len(),
                e.gene
            ))
        })?;
        total += e.vote(*x);
    }
    Ok(decide(total))
}

fn check_samples(ds: &Dataset, samples: &[usize]) -> Result<()> {
    for class in [Class::One, Class::Two] {
        if !samples.iter().any(|&s| ds.label(s) == class) {
            return Err(contract(format!(
                "class {:?} is absent from the fitting samples",
                ds.class_name(class)
            )));
        }
    }
    Ok(())
}

fn gene_moments(ds: &Dataset, gene: usize, samples: &[usize], shift: f64) -> [Moments; 2] {
    let mut m = [Moments::default(); 2];
    for &s in samples {
        m[ds.label(s) as usize].add(ds.value(gene, s) - shift);
    }
    m
}

fn fit_gene(ds: &Dataset, gene: usize, samples: &[usize]) -> GeneVote {
    let shift = ds.value(gene, samples[0]);
    GeneVote::from_moments(gene, shift, gene_moments(ds, gene, samples, shift))
}

/// Signal-to-noise weight of one gene over the given samples.
pub fn signal_to_noise(ds: &Dataset, gene: usize, samples: &[usize]) -> Result<f64> {
    if gene >= ds.gene_count() {
        return Err(contract(format!(
            "gene index {gene} out of range for {} genes",
            ds.gene_count()
        )));
    }
    check_samples(ds, samples)?;
    Ok(fit_gene(ds, gene, samples).weight)
}

fn selected_genes(ds: &Dataset, subset: &GeneSubset) -> Result<Vec<usize>> {
    if subset.len() != ds.gene_count() {
        return Err(contract(format!(
            "gene subset has {} bits for {} genes",
            subset.len(),
            ds.gene_count()
        )));
    }
    Ok(subset.ones().collect())
}

/// Fits a model on the selected genes over `samples`.
pub fn fit_model(ds: &Dataset, subset: &GeneSubset, samples: &[usize]) -> Result<VotingModel> {
    let genes = selected_genes(ds, subset)?;
    if genes.is_empty() {
        return Err(contract("cannot fit a model on an empty gene subset"));
    }
    check_samples(ds, samples)?;
    Ok(VotingModel {
        entries: genes
            .into_iter()
            .map(|g| fit_gene(ds, g, samples))
            .collect(),
    })
}

/// Leave-one-out mismatches over the training samples.
///
/// Each fold refits on the training set minus one sample and predicts it.
/// A fold whose removal would leave a class empty counts as a mismatch.
/// Folds remove one sample's contribution from the full-training moments
/// instead of re-accumulating them.
pub fn loocv_errors(ds: &Dataset, subset: &GeneSubset) -> Result<usize> {
    let genes = selected_genes(ds, subset)?;
    if genes.is_empty() {
        return Err(contract("cannot cross-validate an empty gene subset"));
    }
    let train = ds.train();
    if train.len() < 3 {
        return Err(contract(format!(
            "leave-one-out needs at least 3 training samples, got {}",
            train.len()
        )));
    }
    check_samples(ds, train)?;

    let fitted: Vec<(usize, f64, [Moments; 2])> = genes
        .iter()
        .map(|&g| {
            let shift = ds.value(g, train[0]);
            (g, shift, gene_moments(ds, g, train, shift))
        })
        .collect();
    let class_sizes = fitted[0].2.map(|m| m.n);

    let mut mismatches = 0;
    for &s in train {
        let class = ds.label(s);
        if class_sizes[class as usize] == 1 {
            mismatches += 1;
            continue;
        }
        let total: f64 = fitted
            .iter()
            .map(|&(g, shift, mut m)| {
                let x = ds.value(g, s);
                m[class as usize] = m[class as usize].without(x - shift);
                GeneVote::from_moments(g, shift, m).vote(x)
            })
            .sum();
        if decide(total) != class {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Mismatches on the test samples of a model fitted on all training samples.
pub fn test_errors(ds: &Dataset, subset: &GeneSubset) -> Result<usize> {
    if ds.test().is_empty() {
        return Err(contract("dataset has no test samples"));
    }
    let model = fit_model(ds, subset, ds.train())?;
    Ok(ds
        .test()
        .iter()
        .filter(|&&s| model.predict(ds, s) != ds.label(s))
        .count())
}
