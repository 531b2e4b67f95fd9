//! One NSGA-II run whose final front is written as CSV.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use nsga_core::{run, EvolutionConfig, RunResult};

use crate::config::BenchConfig;
use crate::error::{io, Result};
use crate::problem::build_problem;

pub const DEFAULT_GENERATIONS: usize = 200;

/// Runs NSGA-II on the configured problem.
pub fn optimize(cfg: &BenchConfig) -> Result<RunResult> {
    let problem = build_problem(cfg)?;
    let mut ecfg = EvolutionConfig::for_problem(
        problem.as_ref(),
        cfg.population,
        cfg.generations.unwrap_or(DEFAULT_GENERATIONS),
        cfg.ranker,
        cfg.seed,
    );
    if let Some(r) = cfg.crossover_rate {
        ecfg.crossover_rate = r;
    }
    if let Some(r) = cfg.mutation_rate {
        ecfg.mutation_rate = r;
    }
    Ok(run(&ecfg, problem.as_ref())?)
}

/// `id,genome,f1,...,fM`, one row per member of the best-ranked group.
pub fn front_csv(result: &RunResult) -> String {
    let m = result.final_population.objective_count();
    let mut out = String::from("id,genome");
    for i in 1..=m {
        out.push_str(&format!(",f{i}"));
    }
    out.push('\n');
    for ind in result.final_front_members() {
        out.push_str(&format!("{},{}", ind.id, ind.genome));
        if let Some(obj) = &ind.objectives {
            for v in obj.values() {
                out.push_str(&format!(",{v}"));
            }
        }
        out.push('\n');
    }
    out
}

/// Runs, then writes the front to `out` (or stdout). Returns the wall time.
pub fn optimize_to(cfg: &BenchConfig, out: Option<&Path>) -> Result<Duration> {
    if let Some(path) = out {
        // Fail on an unwritable path before spending time on the run.
        std::fs::File::create(path).map_err(|e| io(path, e))?;
    }
    let result = optimize(cfg)?;
    let text = front_csv(&result);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(path, e))?,
        None => {
            let stdout = std::io::stdout();
            stdout
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| io("<stdout>", e))?;
        }
    }
    Ok(result.wall_time)
}
