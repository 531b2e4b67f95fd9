//! Optimization problems over bit-string genomes.

use crate::error::{config, Result};
use crate::types::{dominates, Genome, ObjectiveVector};

/// A multiobjective problem over fixed-length bit strings. All objectives
/// are minimized. `evaluate` must be a pure function of the genome.
pub trait Problem: Sync {
    fn objective_count(&self) -> usize;

    fn genome_length(&self) -> usize;

    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector>;

    /// Probability that a bit is set in a freshly initialized genome.
    fn init_density(&self) -> f64 {
        0.5
    }
}

/// Leading-ones / trailing-zeros, both maximized (negated here).
///
/// The Pareto front is `1^k 0^(L-k)` for `k = 0..=L`, i.e. `L + 1` points.
#[derive(Debug, Clone, Copy)]
pub struct Lotz {
    length: usize,
}

impl Lotz {
    pub fn new(length: usize) -> Result<Self> {
        if length < 2 {
            return Err(config("LOTZ needs a genome of at least 2 bits"));
        }
        Ok(Lotz { length })
    }

    pub fn leading_ones(g: &Genome) -> usize {
        g.bits().iter().take_while(|b| **b).count()
    }

    pub fn trailing_zeros(g: &Genome) -> usize {
        g.bits().iter().rev().take_while(|b| !**b).count()
    }

    /// Pareto-optimal objective vectors found by evaluating every genome.
    /// Only practical for short genomes.
    pub fn pareto_front_by_enumeration(&self) -> Vec<Vec<f64>> {
        assert!(
            self.length <= 24,
            "enumeration over 2^{} genomes",
            self.length
        );
        let mut seen: Vec<Vec<f64>> = Vec::new();
        for code in 0u32..(1u32 << self.length) {
            let bits = (0..self.length).map(|i| code >> i & 1 == 1).collect();
            let v = self.evaluate(&Genome::from_bits(bits)).unwrap();
            if !seen.contains(&v.values().to_vec()) {
                seen.push(v.values().to_vec());
            }
        }
        let mut front: Vec<Vec<f64>> = seen
            .iter()
            .filter(|p| !seen.iter().any(|q| dominates(q, p)))
            .cloned()
            .collect();
        front.sort_by(|a, b| a.partial_cmp(b).unwrap());
        front
    }
}

impl Problem for Lotz {
    fn objective_count(&self) -> usize {
        2
    }

    fn genome_length(&self) -> usize {
        self.length
    }

    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector> {
        if genome.len() != self.length {
            return Err(crate::error::contract(format!(
                "genome length {} != {}",
                genome.len(),
                self.length
            )));
        }
        ObjectiveVector::new(vec![
            -(Self::leading_ones(genome) as f64),
            -(Self::trailing_zeros(genome) as f64),
        ])
    }
}

/// Objectives drawn uniformly from `[0, 1)` by hashing the genome. Used to
/// exercise the loop where ranking cost dominates evaluation cost.
#[derive(Debug, Clone, Copy)]
pub struct RandomObjectives {
    objectives: usize,
    length: usize,
    salt: u64,
}

impl RandomObjectives {
    pub fn new(objectives: usize, length: usize, salt: u64) -> Result<Self> {
        if objectives < 2 {
            return Err(config("at least 2 objectives are required"));
        }
        if length < 2 {
            return Err(config("genome length must be at least 2"));
        }
        Ok(RandomObjectives {
            objectives,
            length,
            salt,
        })
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Problem for RandomObjectives {
    fn objective_count(&self) -> usize {
        self.objectives
    }

    fn genome_length(&self) -> usize {
        self.length
    }

    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector> {
        let mut h = splitmix64(self.salt);
        for chunk in genome.bits().chunks(64) {
            let word = chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, b)| w | (u64::from(*b) << i));
            h = splitmix64(h ^ word);
        }
        let values = (0..self.objectives)
            .map(|i| {
                let x = splitmix64(h.wrapping_add(i as u64));
                (x >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect();
        ObjectiveVector::new(values)
    }
}
