//! Oracle-equivalence suite over random instances.

use nsga_core::ranking::position_sum_rank;
use nsga_core::{Population, Ranker};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::timing::check_against_oracle;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Instance `trial` of the suite: N in `2..=max_n`, M in `2..=4`, and
/// either continuous values or small integers with many ties.
pub fn random_instance(seed: u64, trial: usize, max_n: usize) -> Result<Population> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let n = rng.random_range(2..=max_n.max(2));
    let m = rng.random_range(2..=4);
    let tied = rng.random_bool(0.5);
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if tied {
                        f64::from(rng.random_range(0u8..4))
                    } else {
                        rng.random::<f64>()
                    }
                })
                .collect()
        })
        .collect();
    Ok(Population::from_objectives(rows)?)
}

/// Four points whose first front holds three members with unequal rank
/// sums: the centre point scores 4 and the two extremes 5.
fn divergence_check() -> Option<String> {
    let pop = Population::from_objectives(vec![
        vec![1.0, 5.0],
        vec![5.0, 1.0],
        vec![2.0, 2.0],
        vec![3.0, 3.0],
    ])
    .ok()?;
    match position_sum_rank(&pop) {
        Ok(r) if r.ranks() == [5, 5, 4, 6] => None,
        Ok(r) => Some(format!("divergence instance ranked {:?}", r.ranks())),
        Err(e) => Some(e.to_string()),
    }
}

/// Checks `rankers` on `trials` random instances, spreading trials over
/// the available cores.
pub fn validate(rankers: &[Ranker], trials: usize, max_n: usize, seed: u64) -> ValidationReport {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(trials.max(1));
    let mut failures: Vec<(usize, String)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut bad = Vec::new();
                    for trial in (w..trials).step_by(workers) {
                        let pop = match random_instance(seed, trial, max_n) {
                            Ok(p) => p,
                            Err(e) => {
                                bad.push((trial, format!("trial {trial}: {e}")));
                                continue;
                            }
                        };
                        for &kind in rankers {
                            if let Err(e) = check_against_oracle(kind, &pop) {
                                bad.push((trial, format!("trial {trial}: {e}")));
                            }
                        }
                    }
                    bad
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("validation worker panicked"))
            .collect()
    });
    failures.sort();
    let mut failures: Vec<String> = failures.into_iter().map(|(_, f)| f).collect();
    let mut checks = trials * rankers.len();
    if rankers.contains(&Ranker::PositionSum) {
        checks += 1;
        failures.extend(divergence_check());
    }
    ValidationReport {
        instances: trials,
        checks,
        failures,
    }
}
