use std::cmp::Ordering;

use super::{checked_rows, IndexStats, RankAssignment};
use crate::error::{contract, Result};
use crate::types::Population;

/// Members sorted on one objective, with tie-aware positions.
///
/// Positions run contiguously from 1 to the number of distinct values;
/// members with equal values share a position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveIndex {
    pub objective: usize,
    /// Ids ordered by ascending objective value, ties by ascending id.
    pub sorted_ids: Vec<u32>,
    /// Position of each id, indexed by id.
    pub position_of: Vec<u32>,
}

impl ObjectiveIndex {
    fn build(rows: &[&[f64]], objective: usize) -> Self {
        let n = rows.len();
        let mut sorted_ids: Vec<u32> = (0..n as u32).collect();
        sorted_ids.sort_unstable_by(|&a, &b| {
            rows[a as usize][objective]
                .partial_cmp(&rows[b as usize][objective])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });

        let mut position_of = vec![0u32; n];
        let mut pos = 0u32;
        let mut prev: Option<f64> = None;
        for &id in &sorted_ids {
            let v = rows[id as usize][objective];
            // The first element has no predecessor and always opens position 1.
            if prev != Some(v) {
                pos += 1;
            }
            position_of[id as usize] = pos;
            prev = Some(v);
        }
        ObjectiveIndex {
            objective,
            sorted_ids,
            position_of,
        }
    }

    pub fn position(&self, id: usize) -> u32 {
        self.position_of[id]
    }

    /// Number of distinct values on this objective.
    pub fn distinct(&self) -> u32 {
        self.position_of.iter().copied().max().unwrap_or(0)
    }

    fn entries(&self) -> usize {
        self.sorted_ids.len() + self.position_of.len()
    }
}

/// Sorts the population on objective `objective` and assigns positions.
pub fn sort_on_objective(pop: &Population, objective: usize) -> Result<ObjectiveIndex> {
    if objective >= pop.objective_count() {
        return Err(contract(format!(
            "objective index {objective} out of range for {} objectives",
            pop.objective_count()
        )));
    }
    let rows = checked_rows(pop)?;
    Ok(ObjectiveIndex::build(&rows, objective))
}

/// Rank of each member as the sum of its positions over all objectives.
/// Lower is better; ranks lie in `M..=M*N`.
pub fn position_sum_rank(pop: &Population) -> Result<RankAssignment> {
    position_sum_rank_instrumented(pop).map(|(r, _)| r)
}

/// [`position_sum_rank`], also reporting the entries held by the M
/// per-objective indices and the rank sums.
pub fn position_sum_rank_instrumented(pop: &Population) -> Result<(RankAssignment, IndexStats)> {
    let rows = checked_rows(pop)?;
    let indices: Vec<ObjectiveIndex> = (0..pop.objective_count())
        .map(|i| ObjectiveIndex::build(&rows, i))
        .collect();

    let mut ranks = vec![0u64; rows.len()];
    for index in &indices {
        for (rank, &pos) in ranks.iter_mut().zip(&index.position_of) {
            *rank += u64::from(pos);
        }
    }
    let stats = IndexStats {
        entries: indices.iter().map(ObjectiveIndex::entries).sum::<usize>() + ranks.len(),
    };
    Ok((RankAssignment { ranks }, stats))
}
