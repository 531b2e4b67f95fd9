use std::cmp::Ordering;

use crate::error::{contract, Result};
use crate::types::{Individual, Population};

/// Crowding distance of each member of one rank group.
#[derive(Debug, Clone, PartialEq)]
pub struct CrowdingRecord {
    ids: Vec<usize>,
    distances: Vec<f64>,
}

impl CrowdingRecord {
    /// Group ids, ascending.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn distance_of(&self, id: usize) -> Option<f64> {
        self.ids.binary_search(&id).ok().map(|i| self.distances[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.ids.iter().copied().zip(self.distances.iter().copied())
    }
}

/// Range-normalized neighbour gaps summed over objectives.
///
/// For every objective the group is sorted by value (ties by id); the two
/// ends get an infinite distance and every interior member accumulates
/// `(next - prev) / (max - min)`. Objectives on which the whole group has
/// one value add nothing to interior members.
pub fn crowding_distance(group: &[usize], pop: &Population) -> Result<CrowdingRecord> {
    if group.is_empty() {
        return Err(contract("crowding distance of an empty group"));
    }
    let mut ids = group.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let rows = ids
        .iter()
        .map(|&id| {
            pop.get(id)
                .ok_or_else(|| contract(format!("id {id} is not in the population")))?
                .objectives()
                .map(|o| o.values())
        })
        .collect::<Result<Vec<_>>>()?;

    let n = ids.len();
    let mut distances = vec![0.0f64; n];
    if n <= 2 {
        distances.fill(f64::INFINITY);
        return Ok(CrowdingRecord { ids, distances });
    }

    let mut order: Vec<usize> = (0..n).collect();
    #[allow(clippy::needless_range_loop)]
    for m in 0..pop.objective_count() {
        // `order` indexes into `ids`, which is ascending, so index order is id order.
        order.sort_unstable_by(|&a, &b| {
            rows[a][m]
                .partial_cmp(&rows[b][m])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        let lo = rows[order[0]][m];
        let hi = rows[order[n - 1]][m];
        distances[order[0]] = f64::INFINITY;
        distances[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distances[w[1]] += (rows[w[2]][m] - rows[w[0]][m]) / range;
        }
    }
    Ok(CrowdingRecord { ids, distances })
}

/// NSGA-II crowded comparison. `Less` means `a` is preferred: lower rank,
/// then larger crowding distance, then smaller id.
pub fn crowded_compare(a: &Individual, b: &Individual) -> Result<Ordering> {
    let rank = |x: &Individual| {
        x.rank
            .ok_or_else(|| contract(format!("individual {} has no rank", x.id)))
    };
    let (ra, rb) = (rank(a)?, rank(b)?);
    if ra != rb {
        return Ok(ra.cmp(&rb));
    }
    let crowd = |x: &Individual| {
        x.crowding
            .ok_or_else(|| contract(format!("individual {} has no crowding distance", x.id)))
    };
    let (ca, cb) = (crowd(a)?, crowd(b)?);
    Ok(cb
        .partial_cmp(&ca)
        .unwrap_or(Ordering::Equal)
        .then(a.id.cmp(&b.id)))
}
