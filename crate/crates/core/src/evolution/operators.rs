use std::cmp::Ordering;

use rand::Rng;

use super::crowding::crowded_compare;
use crate::error::{contract, Result};
use crate::types::{Genome, Individual, Population};

/// Draws two members uniformly with replacement and returns the one
/// preferred by [`crowded_compare`].
pub fn binary_tournament<'a, R: Rng + ?Sized>(
    pop: &'a Population,
    rng: &mut R,
) -> Result<&'a Individual> {
    if pop.is_empty() {
        return Err(contract("tournament on an empty population"));
    }
    let a = &pop.members()[rng.random_range(0..pop.len())];
    let b = &pop.members()[rng.random_range(0..pop.len())];
    Ok(match crowded_compare(a, b)? {
        Ordering::Greater => b,
        _ => a,
    })
}

/// Exchanges the suffixes of `a` and `b` starting at bit `cut`.
pub fn crossover_at(a: &Genome, b: &Genome, cut: usize) -> (Genome, Genome) {
    let mut x = a.bits().to_vec();
    let mut y = b.bits().to_vec();
    x[cut..].swap_with_slice(&mut y[cut..]);
    (Genome::from_bits(x), Genome::from_bits(y))
}

/// With probability `rate`, cuts both parents at a uniform point in
/// `1..L` and swaps suffixes; otherwise returns copies.
pub fn single_point_crossover<R: Rng + ?Sized>(
    a: &Genome,
    b: &Genome,
    rng: &mut R,
    rate: f64,
) -> Result<(Genome, Genome)> {
    if a.len() != b.len() {
        return Err(contract(format!(
            "crossover of genomes with lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(contract("crossover needs genomes of at least 2 bits"));
    }
    if rng.random::<f64>() < rate {
        let cut = rng.random_range(1..a.len());
        Ok(crossover_at(a, b, cut))
    } else {
        Ok((a.clone(), b.clone()))
    }
}

/// Flips each bit independently with probability `per_bit_rate`.
pub fn bitflip_mutation<R: Rng + ?Sized>(g: &Genome, rng: &mut R, per_bit_rate: f64) -> Genome {
    let mut out = g.clone();
    for bit in out.bits_mut() {
        if rng.random::<f64>() < per_bit_rate {
            *bit = !*bit;
        }
    }
    out
}
