use std::cmp::Ordering;

use super::crowding::crowding_distance;
use crate::error::{contract, Result};
use crate::ranking::{RankGroups, Ranker};
use crate::types::{Individual, Population};

/// Chooses `target` survivors from `combined`.
///
/// Rank groups are admitted whole, best first, while they fit. The first
/// group that does not fit is split by crowding distance, least crowded
/// first. For partition rankers the groups are fronts; for the
/// position-sum ranker they are sets of equal rank sum.
///
/// Survivors carry fresh rank and crowding annotations and are renumbered
/// `0..target` in ascending order of their ids in `combined`.
pub fn environmental_selection(
    combined: &Population,
    target: usize,
    ranker: Ranker,
) -> Result<Population> {
    if combined.len() < target {
        return Err(contract(format!(
            "cannot select {target} survivors from {} individuals",
            combined.len()
        )));
    }
    let groups = ranker.rank_groups(combined)?;
    select_from_groups(combined, target, &groups)
}

pub(crate) fn select_from_groups(
    combined: &Population,
    target: usize,
    groups: &RankGroups,
) -> Result<Population> {
    if combined.len() < target {
        return Err(contract(format!(
            "cannot select {target} survivors from {} individuals",
            combined.len()
        )));
    }
    let members = combined.members();
    let mut chosen: Vec<Individual> = Vec::with_capacity(target);
    for (group, &rank) in groups.groups.iter().zip(&groups.values) {
        let room = target - chosen.len();
        if room == 0 {
            break;
        }
        let crowding = crowding_distance(group, combined)?;
        let mut annotated: Vec<(usize, f64)> = crowding.iter().collect();
        if annotated.len() > room {
            annotated.sort_by(|a, b| {
                b.1.partial_cmp(&a.1)
                    .unwrap_or(Ordering::Equal)
                    .then(a.0.cmp(&b.0))
            });
            annotated.truncate(room);
        }
        chosen.extend(annotated.into_iter().map(|(id, d)| Individual {
            rank: Some(rank),
            crowding: Some(d),
            ..members[id].clone()
        }));
    }
    chosen.sort_by_key(|m| m.id);
    Ok(Population::new(combined.objective_count(), chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::ObjectiveVector;

    fn rows(pop: &Population) -> Vec<Vec<f64>> {
        pop.members()
            .iter()
            .map(|m| m.objectives.as_ref().unwrap().values().to_vec())
            .collect()
    }

    fn fronts_3_3_2() -> Population {
        Population::from_objectives(vec![
            vec![0.0, 4.0],
            vec![2.0, 2.0],
            vec![4.0, 0.0],
            vec![1.0, 5.0],
            vec![3.0, 3.0],
            vec![5.0, 1.0],
            vec![6.0, 7.0],
            vec![7.0, 6.0],
        ])
        .unwrap()
    }

    #[test]
    fn whole_front_plus_least_crowded() {
        let combined = fronts_3_3_2();
        for ranker in [Ranker::Oracle, Ranker::FastNds, Ranker::Sweep] {
            let p = environmental_selection(&combined, 4, ranker).unwrap();
            assert_eq!(
                rows(&p),
                vec![
                    vec![0.0, 4.0],
                    vec![2.0, 2.0],
                    vec![4.0, 0.0],
                    vec![1.0, 5.0]
                ]
            );
            let ranks: Vec<_> = p.members().iter().map(|m| m.rank.unwrap()).collect();
            assert_eq!(ranks, vec![1, 1, 1, 2]);
            assert!(p.members()[3].crowding.unwrap().is_infinite());
        }
    }

    #[test]
    fn split_only() {
        let combined =
            Population::from_objectives((0..8).map(|k| vec![k as f64, (7 - k) as f64]).collect())
                .unwrap();
        let p = environmental_selection(&combined, 4, Ranker::FastNds).unwrap();
        assert_eq!(p.len(), 4);
        // Both extremes survive; interior members all tie at distance 4/7.
        let firsts: Vec<f64> = rows(&p).iter().map(|r| r[0]).collect();
        assert_eq!(firsts, vec![0.0, 1.0, 2.0, 7.0]);
    }

    #[test]
    fn exact_fit_takes_first_front() {
        let combined = Population::from_objectives(vec![
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![2.0, 3.0],
            vec![3.0, 2.0],
        ])
        .unwrap();
        let p = environmental_selection(&combined, 2, Ranker::Sweep).unwrap();
        assert_eq!(rows(&p), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn position_sum_groups_by_equal_sum() {
        let combined = Population::from_objectives(vec![
            vec![1.0, 5.0],
            vec![5.0, 1.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ])
        .unwrap();
        // Sums 5, 5, 4, 6: (2,2) alone first, then the pair.
        let p = environmental_selection(&combined, 1, Ranker::PositionSum).unwrap();
        assert_eq!(rows(&p), vec![vec![2.0, 2.0]]);
        assert_eq!(p.members()[0].rank, Some(4));
        let p = environmental_selection(&combined, 3, Ranker::PositionSum).unwrap();
        assert_eq!(rows(&p).len(), 3);
        assert!(!rows(&p).contains(&vec![3.0, 3.0]));
    }

    #[test]
    fn target_larger_than_pool() {
        let combined = fronts_3_3_2();
        assert!(environmental_selection(&combined, 9, Ranker::Oracle).is_err());
    }

    #[test]
    fn survivors_keep_genomes() {
        let members = vec![
            Individual::evaluated(
                0,
                "01".parse().unwrap(),
                ObjectiveVector::new(vec![1.0, 0.0]).unwrap(),
            ),
            Individual::evaluated(
                1,
                "10".parse().unwrap(),
                ObjectiveVector::new(vec![0.0, 1.0]).unwrap(),
            ),
            Individual::evaluated(
                2,
                "11".parse().unwrap(),
                ObjectiveVector::new(vec![2.0, 2.0]).unwrap(),
            ),
        ];
        let combined = Population::new(2, members);
        let p = environmental_selection(&combined, 2, Ranker::FastNds).unwrap();
        let genomes: Vec<String> = p.members().iter().map(|m| m.genome.to_string()).collect();
        assert_eq!(genomes, vec!["01", "10"]);
    }
}
