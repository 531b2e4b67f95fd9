use super::{checked_rows, FrontPartition};
use crate::error::Result;
use crate::types::{dominates, Population};

/// Exact front partition by repeated peeling.
///
/// Each round keeps the members of the remainder that no other remaining
/// member dominates. Intentionally naive: this is the reference the other
/// backends are tested against.
pub fn oracle_front_sort(pop: &Population) -> Result<FrontPartition> {
    let rows = checked_rows(pop)?;
    let mut remaining: Vec<usize> = (0..rows.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let (front, rest): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&p| {
            !remaining
                .iter()
                .any(|&q| q != p && dominates(rows[q], rows[p]))
        });
        fronts.push(front);
        remaining = rest;
    }
    Ok(FrontPartition::from_fronts(fronts))
}
