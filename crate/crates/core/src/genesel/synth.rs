use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::dataset::{Class, Dataset, Split};
use crate::error::{config, Result};

/// Parameters of a synthetic two-class expression dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub genes: usize,
    pub train: usize,
    pub test: usize,
    /// The first `informative` genes carry the class signal.
    pub informative: usize,
    /// Distance between the class means of an informative gene.
    pub separation: f64,
    pub seed: u64,
}

/// Generates a dataset whose informative genes are `N(+sep/2, 1)` for
/// class one and `N(-sep/2, 1)` for class two; all other genes are
/// `N(0, 1)` noise. Each split lists its class-one samples first, with
/// `ceil(n/2)` of them.
pub fn synth_dataset(p: &SynthParams) -> Result<Dataset> {
    if p.genes == 0 {
        return Err(config("synthetic dataset needs at least one gene"));
    }
    if p.informative > p.genes {
        return Err(config(format!(
            "{} informative genes requested out of {}",
            p.informative, p.genes
        )));
    }
    if p.train < 4 || p.test < 4 {
        return Err(config(
            "synthetic splits need at least 4 samples each (2 per class)",
        ));
    }
    if !p.separation.is_finite() || p.separation < 0.0 {
        return Err(config("separation must be finite and non-negative"));
    }

    let mut labels = Vec::with_capacity(p.train + p.test);
    let mut splits = Vec::with_capacity(p.train + p.test);
    let mut sample_ids = Vec::with_capacity(p.train + p.test);
    for (split, n) in [(Split::Train, p.train), (Split::Test, p.test)] {
        let ones = n.div_ceil(2);
        for j in 0..n {
            labels.push(if j < ones { Class::One } else { Class::Two });
            splits.push(split);
            sample_ids.push(format!("{split}_{j}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let half = p.separation / 2.0;
    let expression = (0..p.genes)
        .map(|g| {
            labels
                .iter()
                .map(|&c| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    let mean = match (g < p.informative, c) {
                        (false, _) => 0.0,
                        (true, Class::One) => half,
                        (true, Class::Two) => -half,
                    };
                    mean + z
                })
                .collect()
        })
        .collect();

    Dataset::new(
        (0..p.genes).map(|g| format!("gene_{g}")).collect(),
        sample_ids,
        ["class_1".to_string(), "class_2".to_string()],
        expression,
        labels,
        splits,
    )
}
