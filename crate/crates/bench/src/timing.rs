//! Ranking-time scaling experiments.
//!
//! Two timers run per replicate. `rank_s` brackets only the ranking call;
//! input generation and result handling fall outside it. `wall_s` covers
//! the whole replicate: input generation plus ranking in ranking-only mode,
//! or the complete NSGA-II run when `generations > 0`.

use std::fs::File;
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use nsga_core::ranking::{
    fast_non_dominated_sort, oracle_front_sort, position_sum_rank, sweep_front_sort,
};
use nsga_core::{compare, run, Dominance, EvolutionConfig, Population, Ranker};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::BenchConfig;
use crate::error::{io, BenchError, Result};
use crate::problem::build_problem;

pub const RESULTS_HEADER: &str = "ranker,N,M,replicate,seed,wall_s,rank_s";
pub const SUMMARY_HEADER: &str = "ranker,N,M,mean_rank_s,sd_rank_s,mean_wall_s,sd_wall_s";

/// Largest population on which timed results are also checked against the oracle.
const CHECK_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub ranker: Ranker,
    pub n: usize,
    pub m: usize,
    pub replicate: usize,
    pub seed: u64,
    pub wall_s: f64,
    pub rank_s: f64,
}

impl TimingRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.ranker.name(),
            self.n,
            self.m,
            self.replicate,
            self.seed,
            self.wall_s,
            self.rank_s
        )
    }
}

/// Mean and sample standard deviation of one (ranker, N) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub ranker: Ranker,
    pub n: usize,
    pub m: usize,
    pub mean_rank_s: f64,
    pub sd_rank_s: f64,
    pub mean_wall_s: f64,
    pub sd_wall_s: f64,
}

impl CellSummary {
    pub fn of(records: &[TimingRecord]) -> Option<Self> {
        let first = records.first()?;
        let (mean_rank_s, sd_rank_s) = mean_sd(records.iter().map(|r| r.rank_s));
        let (mean_wall_s, sd_wall_s) = mean_sd(records.iter().map(|r| r.wall_s));
        Some(CellSummary {
            ranker: first.ranker,
            n: first.n,
            m: first.m,
            mean_rank_s,
            sd_rank_s,
            mean_wall_s,
            sd_wall_s,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.ranker.name(),
            self.n,
            self.m,
            self.mean_rank_s,
            self.sd_rank_s,
            self.mean_wall_s,
            self.sd_wall_s
        )
    }
}

/// Arithmetic mean and `n - 1` standard deviation (0 for a single value).
pub fn mean_sd(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `rep` at population size `n`. The ranker is not an
/// input, so every ranker sees the same workloads.
pub fn replicate_seed(base: u64, n: usize, rep: usize) -> u64 {
    splitmix64(base ^ splitmix64(((n as u64) << 32) ^ rep as u64))
}

/// `n` individuals with `m` objective values drawn uniformly from `[0, 1)`.
pub fn random_population(n: usize, m: usize, seed: u64) -> Result<Population> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
        .collect();
    Ok(Population::from_objectives(rows)?)
}

enum Ranked {
    Fronts(nsga_core::ranking::FrontPartition),
    Sums(nsga_core::ranking::RankAssignment),
}

fn rank_raw(kind: Ranker, pop: &Population) -> Result<Ranked> {
    Ok(match kind {
        Ranker::Oracle => Ranked::Fronts(oracle_front_sort(pop)?),
        Ranker::FastNds => Ranked::Fronts(fast_non_dominated_sort(pop)?),
        Ranker::Sweep => Ranked::Fronts(sweep_front_sort(pop)?),
        Ranker::PositionSum => Ranked::Sums(position_sum_rank(pop)?),
    })
}

/// Checks a ranking result against the oracle: partitions must match it
/// exactly and rank sums must respect dominance.
pub fn check_against_oracle(kind: Ranker, pop: &Population) -> Result<()> {
    let expected = oracle_front_sort(pop)?;
    match rank_raw(kind, pop)? {
        Ranked::Fronts(p) if p == expected => Ok(()),
        Ranked::Fronts(_) => Err(BenchError::Validation(format!(
            "{} partition differs from the oracle at N={}",
            kind.name(),
            pop.len()
        ))),
        Ranked::Sums(ranks) => {
            let rows = pop.objective_rows()?;
            for p in 0..rows.len() {
                for q in 0..rows.len() {
                    let ok = match compare(rows[p], rows[q]) {
                        Dominance::ADominatesB => ranks.rank_of(p) < ranks.rank_of(q),
                        Dominance::Equal => ranks.rank_of(p) == ranks.rank_of(q),
                        _ => true,
                    };
                    if !ok {
                        return Err(BenchError::Validation(format!(
                            "{} ranks ids {p} and {q} against dominance at N={}",
                            kind.name(),
                            rows.len()
                        )));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Times the ranking call alone on `replicates` seeded random populations.
pub fn time_ranker(
    kind: Ranker,
    n: usize,
    m: usize,
    replicates: usize,
    seed: u64,
) -> Result<Vec<TimingRecord>> {
    if n < 4 {
        return Err(BenchError::Config(format!(
            "population size {n} is below 4"
        )));
    }
    if m < 2 {
        return Err(BenchError::Config(
            "at least 2 objectives are required".into(),
        ));
    }
    // Untimed warm-up so the first replicate does not pay for cold caches.
    black_box(rank_raw(
        kind,
        &random_population(n, m, replicate_seed(seed, n, 0))?,
    )?);

    let mut out = Vec::with_capacity(replicates);
    for replicate in 0..replicates {
        let rep_seed = replicate_seed(seed, n, replicate);
        let wall = Instant::now();
        let pop = random_population(n, m, rep_seed)?;
        let rank = Instant::now();
        let result = black_box(rank_raw(kind, black_box(&pop))?);
        let rank_s = rank.elapsed().as_secs_f64();
        let wall_s = wall.elapsed().as_secs_f64();
        drop(result);
        if n <= CHECK_LIMIT {
            check_against_oracle(kind, &pop)?;
        }
        out.push(TimingRecord {
            ranker: kind,
            n,
            m,
            replicate,
            seed: rep_seed,
            wall_s,
            rank_s,
        });
    }
    Ok(out)
}

/// Times complete NSGA-II runs of `generations` generations.
fn time_runs(
    cfg: &BenchConfig,
    kind: Ranker,
    n: usize,
    generations: usize,
) -> Result<Vec<TimingRecord>> {
    let problem = build_problem(cfg)?;
    let mut out = Vec::with_capacity(cfg.replicates);
    for replicate in 0..cfg.replicates {
        let rep_seed = replicate_seed(cfg.seed, n, replicate);
        let mut ecfg =
            EvolutionConfig::for_problem(problem.as_ref(), n, generations, kind, rep_seed);
        if let Some(r) = cfg.crossover_rate {
            ecfg.crossover_rate = r;
        }
        if let Some(r) = cfg.mutation_rate {
            ecfg.mutation_rate = r;
        }
        let result = run(&ecfg, problem.as_ref())?;
        out.push(TimingRecord {
            ranker: kind,
            n,
            m: problem.objective_count(),
            replicate,
            seed: rep_seed,
            wall_s: result.wall_time.as_secs_f64(),
            rank_s: result.ranking_time.as_secs_f64(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub records: Vec<TimingRecord>,
    pub summary: Vec<CellSummary>,
    pub results_path: PathBuf,
    pub summary_path: PathBuf,
}

impl ScalingReport {
    /// Mean ranking time of one cell.
    pub fn mean_rank_s(&self, ranker: Ranker, n: usize) -> Option<f64> {
        self.summary
            .iter()
            .find(|c| c.ranker == ranker && c.n == n)
            .map(|c| c.mean_rank_s)
    }
}

/// `<stem>_summary.csv` next to the results file.
pub fn default_summary_path(results: &Path) -> PathBuf {
    let stem = results
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    results.with_file_name(format!("{stem}_summary.csv"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io(path, e))
}

/// Runs every (ranker, N) cell in order and writes the results and summary
/// CSV files. Both files are created before any timing starts.
pub fn run_scaling_experiment(cfg: &BenchConfig) -> Result<ScalingReport> {
    cfg.validate()?;
    let results_path = cfg
        .out
        .clone()
        .ok_or_else(|| BenchError::Config("bench needs an output path (`out` or --out)".into()))?;
    let summary_path = cfg
        .summary
        .clone()
        .unwrap_or_else(|| default_summary_path(&results_path));
    let mut results = create(&results_path)?;
    let mut summary_out = create(&summary_path)?;
    let generations = cfg.generations.unwrap_or(0);

    let mut records = Vec::new();
    let mut summary = Vec::new();
    for &kind in &cfg.rankers {
        for &n in &cfg.sizes {
            let cell = if generations == 0 {
                time_ranker(kind, n, cfg.objectives, cfg.replicates, cfg.seed)?
            } else {
                time_runs(cfg, kind, n, generations)?
            };
            summary.extend(CellSummary::of(&cell));
            records.extend(cell);
        }
    }

    let write_all = |w: &mut BufWriter<File>, path: &Path, header: &str, rows: Vec<String>| {
        let mut text = String::from(header);
        text.push('\n');
        for r in rows {
            text.push_str(&r);
            text.push('\n');
        }
        w.write_all(text.as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| io(path, e))
    };
    write_all(
        &mut results,
        &results_path,
        RESULTS_HEADER,
        records.iter().map(TimingRecord::csv_row).collect(),
    )?;
    write_all(
        &mut summary_out,
        &summary_path,
        SUMMARY_HEADER,
        summary.iter().map(CellSummary::csv_row).collect(),
    )?;

    Ok(ScalingReport {
        records,
        summary,
        results_path,
        summary_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [500.0, 1000.0, 2000.0, 4000.0]
            .iter()
            .map(|&x: &f64| (x, 3.0 * x.powf(1.5)))
            .collect();
        assert!((loglog_slope(&pts).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(loglog_slope(&pts[..1]), None);
        assert_eq!(loglog_slope(&[(1.0, 0.0), (2.0, 1.0)]), None);
    }

    #[test]
    fn mean_and_sd() {
        let (m, s) = mean_sd([2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0].into_iter());
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_sd([3.0].into_iter()), (3.0, 0.0));
    }

    #[test]
    fn records_per_replicate_and_seed_independent_of_ranker() {
        let a = time_ranker(Ranker::FastNds, 4, 3, 10, 5).unwrap();
        let b = time_ranker(Ranker::PositionSum, 4, 3, 10, 5).unwrap();
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.seed, y.seed);
            assert!(x.rank_s >= 0.0 && x.rank_s <= x.wall_s);
        }
        let seeds: std::collections::BTreeSet<u64> = a.iter().map(|r| r.seed).collect();
        assert_eq!(seeds.len(), 10);
    }

    #[test]
    fn populations_are_reproducible() {
        let a = random_population(50, 3, 9).unwrap();
        let b = random_population(50, 3, 9).unwrap();
        assert_eq!(a, b);
        assert!(a
            .objective_rows()
            .unwrap()
            .iter()
            .flat_map(|r| r.iter())
            .all(|&v| (0.0..1.0).contains(&v)));
    }

    #[test]
    fn summary_path_follows_results_stem() {
        assert_eq!(
            default_summary_path(Path::new("/tmp/scaling.csv")),
            PathBuf::from("/tmp/scaling_summary.csv")
        );
    }
}
