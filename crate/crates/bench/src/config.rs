//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; list values are
//! comma-separated. Unknown keys are rejected so that typos cannot
//! silently fall back to defaults.
//!
//! ```text
//! # Ranking time against population size
//! rankers = fast_nds, sweep, position_sum
//! sizes = 500, 1000, 2000, 4000
//! objectives = 3
//! replicates = 10
//! seed = 42
//! out = scaling.csv
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nsga_core::Ranker;

use crate::error::{io, BenchError, Result};

/// The problem an `optimize` run (or an end-to-end `bench` run) works on.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    /// Uniform random objectives derived from the genome.
    Random {
        genome_length: usize,
    },
    Lotz {
        genome_length: usize,
    },
    GeneselSynth {
        genes: usize,
        train: usize,
        test: usize,
        informative: usize,
        separation: f64,
        data_seed: u64,
    },
    GeneselFiles {
        expression: PathBuf,
        labels: PathBuf,
        /// Keep the top-k genes by signal-to-noise; `None` keeps min(50, G).
        prefilter: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub rankers: Vec<Ranker>,
    pub sizes: Vec<usize>,
    pub objectives: usize,
    pub replicates: usize,
    /// `None` means "subcommand default": 0 (ranking only) for `bench`,
    /// 200 for `optimize`.
    pub generations: Option<usize>,
    pub problem: ProblemSpec,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    /// Population size for `optimize`.
    pub population: usize,
    /// Ranker for `optimize`.
    pub ranker: Ranker,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
    /// Random instances checked by `validate`.
    pub trials: usize,
    /// Largest population drawn by `validate`.
    pub max_n: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            rankers: vec![Ranker::FastNds, Ranker::Sweep, Ranker::PositionSum],
            sizes: vec![500, 1000, 2000, 4000],
            objectives: 3,
            replicates: 10,
            generations: None,
            problem: ProblemSpec::Random { genome_length: 32 },
            seed: 0,
            out: None,
            summary: None,
            population: 100,
            ranker: Ranker::FastNds,
            crossover_rate: None,
            mutation_rate: None,
            trials: 1000,
            max_n: 64,
        }
    }
}

const KEYS: &[&str] = &[
    "rankers",
    "sizes",
    "objectives",
    "replicates",
    "generations",
    "problem",
    "seed",
    "out",
    "summary",
    "population",
    "ranker",
    "crossover_rate",
    "mutation_rate",
    "trials",
    "max_n",
    "genome_length",
    "genes",
    "train",
    "test",
    "informative",
    "separation",
    "data_seed",
    "expression",
    "labels",
    "prefilter",
];

fn bad(key: &str, value: &str, why: impl std::fmt::Display) -> BenchError {
    BenchError::Config(format!("invalid value {value:?} for `{key}`: {why}"))
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| bad(key, value, e))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| scalar(key, s))
        .collect()
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                BenchError::Config(format!("line {}: expected `key = value`", i + 1))
            })?;
            let k = k.trim().to_string();
            if !KEYS.contains(&k.as_str()) {
                return Err(BenchError::Config(format!(
                    "line {}: unknown key `{k}`",
                    i + 1
                )));
            }
            if map.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(BenchError::Config(format!(
                    "line {}: duplicate key `{k}`",
                    i + 1
                )));
            }
        }
        Self::from_map(&map)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            BenchError::Config(msg) => BenchError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let mut cfg = BenchConfig::default();
        if let Some(v) = get("rankers") {
            cfg.rankers = list::<Ranker>("rankers", v)?;
        }
        if let Some(v) = get("sizes") {
            cfg.sizes = list("sizes", v)?;
        }
        if let Some(v) = get("objectives") {
            cfg.objectives = scalar("objectives", v)?;
        }
        if let Some(v) = get("replicates") {
            cfg.replicates = scalar("replicates", v)?;
        }
        if let Some(v) = get("generations") {
            cfg.generations = Some(scalar("generations", v)?);
        }
        if let Some(v) = get("seed") {
            cfg.seed = scalar("seed", v)?;
        }
        cfg.out = get("out").map(PathBuf::from);
        cfg.summary = get("summary").map(PathBuf::from);
        if let Some(v) = get("population") {
            cfg.population = scalar("population", v)?;
        }
        if let Some(v) = get("ranker") {
            cfg.ranker = scalar("ranker", v)?;
        }
        if let Some(v) = get("crossover_rate") {
            cfg.crossover_rate = Some(scalar("crossover_rate", v)?);
        }
        if let Some(v) = get("mutation_rate") {
            cfg.mutation_rate = Some(scalar("mutation_rate", v)?);
        }
        if let Some(v) = get("trials") {
            cfg.trials = scalar("trials", v)?;
        }
        if let Some(v) = get("max_n") {
            cfg.max_n = scalar("max_n", v)?;
        }

        let genome_length = get("genome_length")
            .map(|v| scalar("genome_length", v))
            .transpose()?;
        cfg.problem = match get("problem").unwrap_or("random") {
            "random" => ProblemSpec::Random {
                genome_length: genome_length.unwrap_or(32),
            },
            "lotz" => ProblemSpec::Lotz {
                genome_length: genome_length.unwrap_or(16),
            },
            "genesel-synth" => ProblemSpec::GeneselSynth {
                genes: get("genes")
                    .map(|v| scalar("genes", v))
                    .transpose()?
                    .unwrap_or(200),
                train: get("train")
                    .map(|v| scalar("train", v))
                    .transpose()?
                    .unwrap_or(38),
                test: get("test")
                    .map(|v| scalar("test", v))
                    .transpose()?
                    .unwrap_or(34),
                informative: get("informative")
                    .map(|v| scalar("informative", v))
                    .transpose()?
                    .unwrap_or(5),
                separation: get("separation")
                    .map(|v| scalar("separation", v))
                    .transpose()?
                    .unwrap_or(6.0),
                data_seed: get("data_seed")
                    .map(|v| scalar("data_seed", v))
                    .transpose()?
                    .unwrap_or(0),
            },
            "genesel-files" => ProblemSpec::GeneselFiles {
                expression: get("expression").map(PathBuf::from).ok_or_else(|| {
                    BenchError::Config("problem genesel-files needs `expression = <path>`".into())
                })?,
                labels: get("labels").map(PathBuf::from).ok_or_else(|| {
                    BenchError::Config("problem genesel-files needs `labels = <path>`".into())
                })?,
                prefilter: get("prefilter")
                    .map(|v| scalar("prefilter", v))
                    .transpose()?,
            },
            other => {
                return Err(bad(
                    "problem",
                    other,
                    "expected random, lotz, genesel-synth or genesel-files",
                ))
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rankers.is_empty() {
            return Err(BenchError::Config("`rankers` is empty".into()));
        }
        if self.sizes.is_empty() {
            return Err(BenchError::Config("`sizes` is empty".into()));
        }
        if let Some(n) = self.sizes.iter().find(|&&n| n < 4 || !n.is_multiple_of(2)) {
            return Err(BenchError::Config(format!(
                "population size {n} must be even and at least 4"
            )));
        }
        if self.replicates == 0 {
            return Err(BenchError::Config("`replicates` must be at least 1".into()));
        }
        if self.objectives < 2 {
            return Err(BenchError::Config("`objectives` must be at least 2".into()));
        }
        if self.max_n < 2 {
            return Err(BenchError::Config("`max_n` must be at least 2".into()));
        }
        Ok(())
    }
}
