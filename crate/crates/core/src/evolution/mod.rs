//! The NSGA-II generational loop.
//!
//! Each generation breeds `N` offspring from the current parents by binary
//! tournament, single-point crossover and bit-flip mutation, evaluates
//! them, ranks the combined `2N` pool with the configured [`Ranker`], and
//! keeps `N` survivors by [`environmental_selection`].
//!
//! All randomness comes from one ChaCha8 stream seeded from
//! [`EvolutionConfig::seed`], so a run is bit-reproducible.

mod crowding;
mod operators;
mod selection;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use crowding::{crowded_compare, crowding_distance, CrowdingRecord};
pub use operators::{binary_tournament, bitflip_mutation, crossover_at, single_point_crossover};
pub use selection::environmental_selection;

use crate::error::{config, Error, Result};
use crate::problems::Problem;
use crate::ranking::Ranker;
use crate::types::{Genome, Individual, Population};

pub const DEFAULT_CROSSOVER_RATE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub population_size: usize,
    pub genome_length: usize,
    pub objective_count: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-bit flip probability.
    pub mutation_rate: f64,
    pub ranker: Ranker,
    pub seed: u64,
}

impl EvolutionConfig {
    /// Config sized for `problem`, with crossover rate 0.9 and mutation rate `1/L`.
    pub fn for_problem(
        problem: &dyn Problem,
        population_size: usize,
        generations: usize,
        ranker: Ranker,
        seed: u64,
    ) -> Self {
        let genome_length = problem.genome_length();
        EvolutionConfig {
            population_size,
            genome_length,
            objective_count: problem.objective_count(),
            generations,
            crossover_rate: DEFAULT_CROSSOVER_RATE,
            mutation_rate: 1.0 / genome_length.max(1) as f64,
            ranker,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return Err(config(format!(
                "population size must be even and at least 4, got {}",
                self.population_size
            )));
        }
        if self.generations == 0 {
            return Err(config("generations must be at least 1"));
        }
        if self.genome_length < 2 {
            return Err(config("genome length must be at least 2"));
        }
        if self.objective_count < 2 {
            return Err(config("at least 2 objectives are required"));
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(config(format!("{name} must lie in [0, 1], got {rate}")));
            }
        }
        Ok(())
    }

    fn validate_for(&self, problem: &dyn Problem) -> Result<()> {
        self.validate()?;
        if problem.genome_length() != self.genome_length {
            return Err(config(format!(
                "config genome length {} does not match the problem's {}",
                self.genome_length,
                problem.genome_length()
            )));
        }
        if problem.objective_count() != self.objective_count {
            return Err(config(format!(
                "config objective count {} does not match the problem's {}",
                self.objective_count,
                problem.objective_count()
            )));
        }
        Ok(())
    }
}

/// Summary of one population after selection.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationStats {
    /// 0 for the initial population.
    pub generation: usize,
    pub best_group_size: usize,
    pub objective_min: Vec<f64>,
    pub objective_max: Vec<f64>,
}

impl GenerationStats {
    fn of(generation: usize, pop: &Population) -> Self {
        let m = pop.objective_count();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for ind in pop.members() {
            if let Some(obj) = &ind.objectives {
                for (i, &v) in obj.values().iter().enumerate() {
                    lo[i] = lo[i].min(v);
                    hi[i] = hi[i].max(v);
                }
            }
        }
        GenerationStats {
            generation,
            best_group_size: best_group(pop).len(),
            objective_min: lo,
            objective_max: hi,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_population: Population,
    /// Ids of the best-ranked group of the final population.
    pub final_front: Vec<usize>,
    pub per_generation_stats: Vec<GenerationStats>,
    pub wall_time: Duration,
    /// Time spent inside ranking calls, summed over the run.
    pub ranking_time: Duration,
}

impl RunResult {
    pub fn final_front_members(&self) -> impl Iterator<Item = &Individual> {
        self.final_front
            .iter()
            .map(|&id| &self.final_population.members()[id])
    }
}

fn best_group(pop: &Population) -> Vec<usize> {
    let best = pop.members().iter().filter_map(|m| m.rank).min();
    pop.members()
        .iter()
        .filter(|m| m.rank.is_some() && m.rank == best)
        .map(|m| m.id)
        .collect()
}

fn evaluate_all(
    genomes: Vec<Genome>,
    problem: &dyn Problem,
    id_offset: usize,
) -> Result<Vec<Individual>> {
    genomes
        .into_iter()
        .enumerate()
        .map(|(i, genome)| {
            let id = id_offset + i;
            let objectives = problem.evaluate(&genome).map_err(|e| Error::Evaluation {
                id,
                reason: e.to_string(),
            })?;
            if objectives.len() != problem.objective_count() {
                return Err(Error::Evaluation {
                    id,
                    reason: format!(
                        "{} objectives returned, {} declared",
                        objectives.len(),
                        problem.objective_count()
                    ),
                });
            }
            Ok(Individual::evaluated(id, genome, objectives))
        })
        .collect()
}

fn rank_and_select(
    combined: &Population,
    target: usize,
    ranker: Ranker,
) -> Result<(Population, Duration)> {
    let start = Instant::now();
    let groups = ranker.rank_groups(combined)?;
    let elapsed = start.elapsed();
    let next = selection::select_from_groups(combined, target, &groups)?;
    Ok((next, elapsed))
}

fn breed<R: Rng + ?Sized>(
    parents: &Population,
    cfg: &EvolutionConfig,
    rng: &mut R,
) -> Result<Vec<Genome>> {
    let n = cfg.population_size;
    let mut children = Vec::with_capacity(n);
    while children.len() < n {
        let a = binary_tournament(parents, rng)?;
        let b = binary_tournament(parents, rng)?;
        let (x, y) = single_point_crossover(&a.genome, &b.genome, rng, cfg.crossover_rate)?;
        children.push(bitflip_mutation(&x, rng, cfg.mutation_rate));
        if children.len() < n {
            children.push(bitflip_mutation(&y, rng, cfg.mutation_rate));
        }
    }
    Ok(children)
}

fn step<R: Rng + ?Sized>(
    parents: Population,
    cfg: &EvolutionConfig,
    problem: &dyn Problem,
    rng: &mut R,
) -> Result<(Population, Duration)> {
    let children = breed(&parents, cfg, rng)?;
    let offspring = Population::new(
        parents.objective_count(),
        evaluate_all(children, problem, parents.len())?,
    );
    let combined = Population::combine(parents, offspring)?;
    rank_and_select(&combined, cfg.population_size, cfg.ranker)
}

/// One generation: offspring `Q_t` from `parents`, then survivors from
/// `P_t + Q_t`. `parents` must carry rank and crowding annotations.
pub fn evolve_generation<R: Rng + ?Sized>(
    parents: Population,
    cfg: &EvolutionConfig,
    problem: &dyn Problem,
    rng: &mut R,
) -> Result<Population> {
    step(parents, cfg, problem, rng).map(|(p, _)| p)
}

/// Uniform random initial population, evaluated and annotated.
pub fn initial_population<R: Rng + ?Sized>(
    cfg: &EvolutionConfig,
    problem: &dyn Problem,
    rng: &mut R,
) -> Result<Population> {
    let density = problem.init_density().clamp(0.0, 1.0);
    let genomes = (0..cfg.population_size)
        .map(|_| {
            Genome::from_bits(
                (0..cfg.genome_length)
                    .map(|_| rng.random::<f64>() < density)
                    .collect(),
            )
        })
        .collect();
    let pop = Population::new(cfg.objective_count, evaluate_all(genomes, problem, 0)?);
    rank_and_select(&pop, cfg.population_size, cfg.ranker).map(|(p, _)| p)
}

/// Runs NSGA-II for `cfg.generations` generations.
pub fn run(cfg: &EvolutionConfig, problem: &dyn Problem) -> Result<RunResult> {
    cfg.validate_for(problem)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ranking_time = Duration::ZERO;

    let mut pop = initial_population(cfg, problem, &mut rng)?;
    let mut stats = vec![GenerationStats::of(0, &pop)];
    for generation in 1..=cfg.generations {
        let (next, ranked) = step(pop, cfg, problem, &mut rng)?;
        ranking_time += ranked;
        pop = next;
        stats.push(GenerationStats::of(generation, &pop));
    }
    let final_front = best_group(&pop);
    Ok(RunResult {
        final_population: pop,
        final_front,
        per_generation_stats: stats,
        wall_time: start.elapsed(),
        ranking_time,
    })
}
