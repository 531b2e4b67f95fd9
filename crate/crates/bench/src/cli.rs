//! `nsga-bench` subcommands.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nsga_core::Ranker;

use crate::config::BenchConfig;
use crate::error::{BenchError, Result};
use crate::optimize::optimize_to;
use crate::timing::run_scaling_experiment;
use crate::validate::validate;

#[derive(Debug, Parser)]
#[command(
    name = "nsga-bench",
    version,
    about = "NSGA-II ranking benchmarks and runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time ranking backends over the configured population sizes.
    Bench(Common),
    /// Run NSGA-II once and write the final front as CSV.
    Optimize(Common),
    /// Check every backend against the oracle on random instances.
    Validate(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Key-value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ranking backend: oracle, fast_nds, sweep or position_sum.
    #[arg(long)]
    ranker: Option<String>,
}

impl Common {
    fn config(&self) -> Result<(BenchConfig, Option<Ranker>)> {
        let mut cfg = match &self.config {
            Some(path) => BenchConfig::load(path)?,
            None => BenchConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        let ranker = self
            .ranker
            .as_deref()
            .map(|r| r.parse::<Ranker>())
            .transpose()
            .map_err(|e| BenchError::Config(e.to_string()))?;
        Ok((cfg, ranker))
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Bench(c) => {
            let (mut cfg, ranker) = c.config()?;
            if let Some(r) = ranker {
                cfg.rankers = vec![r];
            }
            let report = run_scaling_experiment(&cfg)?;
            eprintln!(
                "wrote {} rows to {} and {} cells to {}",
                report.records.len(),
                report.results_path.display(),
                report.summary.len(),
                report.summary_path.display()
            );
            Ok(())
        }
        Command::Optimize(c) => {
            let (mut cfg, ranker) = c.config()?;
            if let Some(r) = ranker {
                cfg.ranker = r;
            }
            let wall = optimize_to(&cfg, cfg.out.as_deref())?;
            eprintln!("wall time {:.3} s", wall.as_secs_f64());
            Ok(())
        }
        Command::Validate(c) => {
            let (cfg, ranker) = c.config()?;
            let rankers = match ranker {
                Some(r) => vec![r],
                None => Ranker::ALL.to_vec(),
            };
            let report = validate(&rankers, cfg.trials, cfg.max_n, cfg.seed);
            for f in &report.failures {
                eprintln!("FAIL {f}");
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "{verdict}: {} instances, {} checks, {} failures",
                report.instances,
                report.checks,
                report.failures.len()
            );
            if report.passed() {
                Ok(())
            } else {
                Err(BenchError::Validation(format!(
                    "{} of {} checks failed",
                    report.failures.len(),
                    report.checks
                )))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
