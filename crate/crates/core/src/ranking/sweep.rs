use std::cmp::Ordering;

use super::{checked_rows, FrontPartition};
use crate::error::Result;
use crate::types::{dominates, Population};

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Front partition by presort-and-sweep.
///
/// Members are visited in lexicographic objective order (id breaks full
/// ties), so a member visited later can never dominate one visited earlier.
/// Each member joins the lowest front that holds none of its dominators.
/// Being dominated from front `k` implies being dominated from every front
/// below `k`, so the target front is found by binary search.
pub fn sweep_front_sort(pop: &Population) -> Result<FrontPartition> {
    let rows = checked_rows(pop)?;
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_unstable_by(|&a, &b| lexicographic(rows[a], rows[b]).then(a.cmp(&b)));

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    for s in order {
        let dominated_in = |front: &Vec<usize>| front.iter().any(|&t| dominates(rows[t], rows[s]));
        let k = fronts.partition_point(dominated_in);
        if k == fronts.len() {
            fronts.push(vec![s]);
        } else {
            fronts[k].push(s);
        }
    }
    Ok(FrontPartition::from_fronts(fronts))
}
