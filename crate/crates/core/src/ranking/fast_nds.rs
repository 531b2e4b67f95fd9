use super::{checked_rows, FrontPartition, IndexStats};
use crate::error::Result;
use crate::types::{compare, Dominance, Population};

/// Per-individual bookkeeping of the NSGA-II sort.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominationRecord {
    /// Ids this individual dominates (`S_p`).
    pub dominated: Vec<u32>,
    /// How many members dominate this individual (`n_p`).
    pub count: u32,
}

/// Computes `S_p` and `n_p` for every member in one all-pairs pass.
pub fn domination_records(pop: &Population) -> Result<Vec<DominationRecord>> {
    let rows = checked_rows(pop)?;
    Ok(records(&rows))
}

fn records(rows: &[&[f64]]) -> Vec<DominationRecord> {
    let n = rows.len();
    let mut recs = vec![DominationRecord::default(); n];
    for p in 0..n {
        for q in (p + 1)..n {
            match compare(rows[p], rows[q]) {
                Dominance::ADominatesB => {
                    recs[p].dominated.push(q as u32);
                    recs[q].count += 1;
                }
                Dominance::BDominatesA => {
                    recs[q].dominated.push(p as u32);
                    recs[p].count += 1;
                }
                Dominance::Incomparable | Dominance::Equal => {}
            }
        }
    }
    recs
}

/// The NSGA-II non-dominated sort.
pub fn fast_non_dominated_sort(pop: &Population) -> Result<FrontPartition> {
    fast_non_dominated_sort_instrumented(pop).map(|(p, _)| p)
}

/// [`fast_non_dominated_sort`], also reporting how many entries the
/// dominated sets and counters held (`N + sum |S_p|`).
pub fn fast_non_dominated_sort_instrumented(
    pop: &Population,
) -> Result<(FrontPartition, IndexStats)> {
    let rows = checked_rows(pop)?;
    let mut recs = records(&rows);
    let stats = IndexStats {
        entries: recs.len() + recs.iter().map(|r| r.dominated.len()).sum::<usize>(),
    };

    let mut current: Vec<usize> = (0..recs.len()).filter(|&p| recs[p].count == 0).collect();
    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            let dominated = std::mem::take(&mut recs[p].dominated);
            for q in dominated {
                let q = q as usize;
                recs[q].count -= 1;
                if recs[q].count == 0 {
                    next.push(q);
                }
            }
        }
        fronts.push(current);
        current = next;
    }
    Ok((FrontPartition::from_fronts(fronts), stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_example() {
        let pop = Population::from_objectives(vec![
            vec![1.0, 2.0],
            vec![2.0, 1.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ])
        .unwrap();
        let p = fast_non_dominated_sort(&pop).unwrap();
        assert_eq!(p.fronts(), &[vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn anti_chain_is_one_front() {
        let n = 20;
        let rows = (1..=n).map(|k| vec![k as f64, (n - k) as f64]).collect();
        let p = fast_non_dominated_sort(&Population::from_objectives(rows).unwrap()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.fronts()[0].len(), n);
    }

    #[test]
    fn chain_is_all_singletons() {
        let n = 15;
        let rows = (1..=n).map(|k| vec![k as f64, k as f64]).collect();
        let p = fast_non_dominated_sort(&Population::from_objectives(rows).unwrap()).unwrap();
        assert_eq!(p.len(), n);
        assert!(p.fronts().iter().enumerate().all(|(i, f)| f == &vec![i]));
    }

    #[test]
    fn records_match_definition() {
        let pop = Population::from_objectives(vec![
            vec![1.0, 2.0],
            vec![2.0, 1.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ])
        .unwrap();
        let r = domination_records(&pop).unwrap();
        assert_eq!(r[0].dominated, vec![2, 3]);
        assert_eq!(r[2].dominated, vec![3]);
        assert_eq!(
            r.iter().map(|x| x.count).collect::<Vec<_>>(),
            vec![0, 0, 2, 3]
        );
    }
}
