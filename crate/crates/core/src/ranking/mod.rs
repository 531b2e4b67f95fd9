//! Ranking backends for a combined population.
//!
//! Three backends compute the exact Pareto-front partition:
//!
//! * [`oracle_front_sort`] peels non-dominated sets by all-pairs comparison,
//!   `O(MN^3)`. It is the reference the other backends are checked against.
//! * [`fast_non_dominated_sort`] is the domination-count/dominated-set
//!   procedure of NSGA-II, `O(MN^2)` time and up to `O(N^2)` space.
//! * [`sweep_front_sort`] presorts lexicographically and sweeps solutions
//!   into fronts in an order where a later solution can never dominate an
//!   earlier one.
//!
//! The fourth, [`position_sum_rank`], assigns every individual the sum of
//! its tie-aware positions in the M per-objective sorted orders. It costs
//! `O(MN log N)` time and `O(MN)` space. The sum is consistent with
//! dominance (a dominating individual always has a strictly smaller sum)
//! but it is *not* the front index: mutually non-dominated individuals can
//! receive different sums.

mod fast_nds;
mod oracle;
mod position_sum;
mod sweep;

use std::fmt;
use std::str::FromStr;

pub use fast_nds::{
    domination_records, fast_non_dominated_sort, fast_non_dominated_sort_instrumented,
    DominationRecord,
};
pub use oracle::oracle_front_sort;
pub use position_sum::{
    position_sum_rank, position_sum_rank_instrumented, sort_on_objective, ObjectiveIndex,
};
pub use sweep::sweep_front_sort;

use crate::error::{contract, Result};
use crate::types::Population;

/// Ordered Pareto fronts `F_1, F_2, ...`. Ids inside each front are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub(crate) fn from_fronts(mut fronts: Vec<Vec<usize>>) -> Self {
        for f in &mut fronts {
            f.sort_unstable();
        }
        FrontPartition { fronts }
    }

    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn into_fronts(self) -> Vec<Vec<usize>> {
        self.fronts
    }

    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    /// 1-based front index for every id in `0..n`.
    pub fn front_index_of(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![0; n];
        for (i, f) in self.fronts.iter().enumerate() {
            for &id in f {
                idx[id] = i + 1;
            }
        }
        idx
    }
}

/// Scalar rank per individual, indexed by id. Lower is better.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    ranks: Vec<u64>,
}

impl RankAssignment {
    pub fn rank_of(&self, id: usize) -> u64 {
        self.ranks[id]
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }
}

/// Number of index entries a ranking call held at its peak, for the space
/// comparison between backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IndexStats {
    pub entries: usize,
}

/// Selects one ranking backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ranker {
    Oracle,
    FastNds,
    Sweep,
    PositionSum,
}

impl Ranker {
    pub const ALL: [Ranker; 4] = [
        Ranker::Oracle,
        Ranker::FastNds,
        Ranker::Sweep,
        Ranker::PositionSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ranker::Oracle => "oracle",
            Ranker::FastNds => "fast_nds",
            Ranker::Sweep => "sweep",
            Ranker::PositionSum => "position_sum",
        }
    }

    /// Whether this backend produces a true front partition.
    pub fn is_partition(self) -> bool {
        !matches!(self, Ranker::PositionSum)
    }

    /// Ranks `pop` into ordered groups of equal rank.
    pub fn rank_groups(self, pop: &Population) -> Result<RankGroups> {
        match self {
            Ranker::Oracle => oracle_front_sort(pop).map(RankGroups::from),
            Ranker::FastNds => fast_non_dominated_sort(pop).map(RankGroups::from),
            Ranker::Sweep => sweep_front_sort(pop).map(RankGroups::from),
            Ranker::PositionSum => position_sum_rank(pop).map(RankGroups::from),
        }
    }

    /// Ranks `pop` and writes each member's rank annotation.
    pub fn annotate(self, pop: &mut Population) -> Result<RankGroups> {
        let groups = self.rank_groups(pop)?;
        let members = pop.members_mut();
        for (group, &value) in groups.groups.iter().zip(&groups.values) {
            for &id in group {
                members[id].rank = Some(value);
            }
        }
        Ok(groups)
    }
}

impl fmt::Display for Ranker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ranker {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "oracle" => Ok(Ranker::Oracle),
            "fast_nds" | "fast" | "nsga2" => Ok(Ranker::FastNds),
            "sweep" => Ok(Ranker::Sweep),
            "position_sum" | "possum" => Ok(Ranker::PositionSum),
            other => Err(crate::error::config(format!(
                "unknown ranker {other:?} (expected oracle, fast_nds, sweep or position_sum)"
            ))),
        }
    }
}

/// Individuals grouped by equal rank, best group first.
///
/// For partition backends the groups are the fronts and the values are
/// 1-based front indices. For the position-sum backend the groups collect
/// individuals with the same sum, and the values are the sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankGroups {
    pub groups: Vec<Vec<usize>>,
    pub values: Vec<u64>,
}

impl From<FrontPartition> for RankGroups {
    fn from(p: FrontPartition) -> Self {
        let values = (1..=p.fronts.len() as u64).collect();
        RankGroups {
            groups: p.fronts,
            values,
        }
    }
}

impl From<RankAssignment> for RankGroups {
    fn from(r: RankAssignment) -> Self {
        let mut order: Vec<usize> = (0..r.ranks.len()).collect();
        order.sort_unstable_by_key(|&id| (r.ranks[id], id));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut values = Vec::new();
        for id in order {
            let v = r.ranks[id];
            if values.last() != Some(&v) {
                values.push(v);
                groups.push(Vec::new());
            }
            groups.last_mut().unwrap().push(id);
        }
        RankGroups { groups, values }
    }
}

pub(crate) fn checked_rows(pop: &Population) -> Result<Vec<&[f64]>> {
    let rows = pop.objective_rows()?;
    if rows.len() > u32::MAX as usize {
        return Err(contract("population too large for 32-bit ids"));
    }
    Ok(rows)
}
