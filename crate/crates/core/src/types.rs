//! Shared domain types and the Pareto-dominance predicate.
//!
//! Every objective is minimized. Problems that want to maximize a quantity
//! negate it in their evaluation function.

use std::fmt;

use crate::error::{contract, Result};

/// Outcome of comparing two objective vectors under Pareto dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    ADominatesB,
    BDominatesA,
    Incomparable,
    /// Identical vectors. Neither dominates the other.
    Equal,
}

impl Dominance {
    pub fn reverse(self) -> Self {
        match self {
            Dominance::ADominatesB => Dominance::BDominatesA,
            Dominance::BDominatesA => Dominance::ADominatesB,
            other => other,
        }
    }
}

/// Compares two objective slices of the same length.
///
/// This is the unchecked form used inside the ranking loops; callers are
/// expected to have validated the population first. Use [`dominance`] for
/// a checked comparison.
#[inline]
pub fn compare(a: &[f64], b: &[f64]) -> Dominance {
    debug_assert_eq!(a.len(), b.len());
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return Dominance::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::ADominatesB,
        (false, true) => Dominance::BDominatesA,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

/// `true` iff `a` Pareto-dominates `b`.
#[inline]
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    compare(a, b) == Dominance::ADominatesB
}

/// Checked dominance comparison of two objective vectors.
pub fn dominance(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(contract(format!(
            "cannot compare objective vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(compare(a.values(), b.values()))
}

/// Objective values of one evaluated individual. At least two entries, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(contract(format!(
                "an objective vector needs at least 2 objectives, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(contract(format!(
                "objective {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(ObjectiveVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for ObjectiveVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Fixed-length bit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Genome(Vec<bool>);

impl Genome {
    pub fn zeros(len: usize) -> Self {
        Genome(vec![false; len])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Genome(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Genome {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid genome character {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Genome)
    }
}

/// A candidate solution plus the annotations written by ranking and crowding.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub id: usize,
    pub genome: Genome,
    pub objectives: Option<ObjectiveVector>,
    /// Front index (1-based) or position sum, depending on the ranker.
    pub rank: Option<u64>,
    pub crowding: Option<f64>,
}

impl Individual {
    pub fn new(id: usize, genome: Genome) -> Self {
        Individual {
            id,
            genome,
            objectives: None,
            rank: None,
            crowding: None,
        }
    }

    pub fn evaluated(id: usize, genome: Genome, objectives: ObjectiveVector) -> Self {
        Individual {
            objectives: Some(objectives),
            ..Individual::new(id, genome)
        }
    }

    pub fn objectives(&self) -> Result<&ObjectiveVector> {
        self.objectives
            .as_ref()
            .ok_or_else(|| contract(format!("individual {} has not been evaluated", self.id)))
    }
}

/// A set of individuals whose ids are the dense indices `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    objective_count: usize,
}

impl Population {
    /// Builds a population, renumbering ids to match member positions.
    pub fn new(objective_count: usize, mut members: Vec<Individual>) -> Self {
        for (i, m) in members.iter_mut().enumerate() {
            m.id = i;
        }
        Population {
            members,
            objective_count,
        }
    }

    /// Population of genome-less individuals with the given objective rows.
    pub fn from_objectives(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.first().map_or(2, Vec::len);
        let members = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                Ok(Individual::evaluated(
                    i,
                    Genome::default(),
                    ObjectiveVector::new(row)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Population::new(m, members))
    }

    /// The combined pool of parents followed by offspring, ids reassigned `0..2N`.
    pub fn combine(parents: Population, offspring: Population) -> Result<Self> {
        if parents.objective_count != offspring.objective_count {
            return Err(contract(format!(
                "cannot combine populations with {} and {} objectives",
                parents.objective_count, offspring.objective_count
            )));
        }
        let mut members = parents.members;
        members.extend(offspring.members);
        Ok(Population::new(parents.objective_count, members))
    }

    pub fn objective_count(&self) -> usize {
        self.objective_count
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn members_mut(&mut self) -> &mut [Individual] {
        &mut self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn get(&self, id: usize) -> Option<&Individual> {
        self.members.get(id)
    }

    /// Objective rows indexed by id, after checking that every member is
    /// evaluated with the declared objective count.
    pub fn objective_rows(&self) -> Result<Vec<&[f64]>> {
        if self.members.is_empty() {
            return Err(contract("population is empty"));
        }
        self.members
            .iter()
            .enumerate()
            .map(|(i, ind)| {
                if ind.id != i {
                    return Err(contract(format!(
                        "member at position {i} carries id {}; ids must be dense",
                        ind.id
                    )));
                }
                let obj = ind.objectives()?;
                if obj.len() != self.objective_count {
                    return Err(contract(format!(
                        "individual {i} has {} objectives, population declares {}",
                        obj.len(),
                        self.objective_count
                    )));
                }
                Ok(obj.values())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(v: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn strict_improvement_dominates() {
        assert_eq!(
            dominance(&ov(&[1.0, 1.0]), &ov(&[2.0, 2.0])).unwrap(),
            Dominance::ADominatesB
        );
        assert_eq!(
            dominance(&ov(&[2.0, 2.0]), &ov(&[1.0, 1.0])).unwrap(),
            Dominance::BDominatesA
        );
    }

    #[test]
    fn trade_off_is_incomparable() {
        assert_eq!(
            dominance(&ov(&[1.0, 3.0]), &ov(&[3.0, 1.0])).unwrap(),
            Dominance::Incomparable
        );
    }

    #[test]
    fn identical_vectors_are_equal() {
        assert_eq!(
            dominance(&ov(&[2.0, 2.0]), &ov(&[2.0, 2.0])).unwrap(),
            Dominance::Equal
        );
    }

    #[test]
    fn weak_improvement_dominates() {
        assert_eq!(compare(&[1.0, 2.0], &[1.0, 3.0]), Dominance::ADominatesB);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let err = dominance(&ov(&[1.0, 2.0]), &ov(&[1.0, 2.0, 3.0])).unwrap_err();
        assert!(matches!(err, crate::Error::Contract(_)));
    }

    #[test]
    fn non_finite_objectives_are_rejected() {
        assert!(ObjectiveVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(ObjectiveVector::new(vec![f64::INFINITY, 0.0]).is_err());
        assert!(ObjectiveVector::new(vec![1.0]).is_err());
    }

    #[test]
    fn unevaluated_member_is_a_contract_violation() {
        let pop = Population::new(2, vec![Individual::new(0, Genome::zeros(3))]);
        assert!(matches!(
            pop.objective_rows(),
            Err(crate::Error::Contract(_))
        ));
    }

    #[test]
    fn combine_renumbers_ids() {
        let a = Population::from_objectives(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let b = Population::from_objectives(vec![vec![2.0, 2.0]]).unwrap();
        let c = Population::combine(a, b).unwrap();
        let ids: Vec<_> = c.members().iter().map(|m| m.id).collect();
        assert_eq!(ids, vec![0, 1, 2]);
        assert_eq!(c.objective_rows().unwrap()[2], &[2.0, 2.0]);
    }

    #[test]
    fn genome_text_round_trip() {
        let g: Genome = "10110".parse().unwrap();
        assert_eq!(g.count_ones(), 3);
        assert_eq!(g.to_string(), "10110");
        assert_eq!(g.ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert!("10a".parse::<Genome>().is_err());
    }
}
