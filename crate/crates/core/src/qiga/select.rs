use serde::Serialize;

use crate::qcore::sample_weighted;
use crate::qiga::tsp::by_length;
use crate::qiga::{tour_length, Tour, TspInstance};
use crate::RandomSource;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Weight `P − rank + 1` by tour length.
    #[default]
    Rank,
    /// Equal blend of the length-rank weight and a diversity-rank weight,
    /// where diversity is the number of positions differing from the elite.
    RankSpace,
}

/// Weight `P − rank + 1` for 1-based `rank` in a population of `P`.
fn linear_weight(population: usize, rank: usize) -> f64 {
    (population - rank + 1) as f64
}

/// Keeps `keep` tours. The shortest (lowest index on ties) always survives
/// and comes first; the rest are drawn by weight without replacement.
pub fn select(
    population: &[Tour],
    instance: &TspInstance,
    keep: usize,
    scheme: Selection,
    rng: &mut RandomSource,
) -> Vec<Tour> {
    let p = population.len();
    if p == 0 || keep == 0 {
        return Vec::new();
    }
    let lengths: Vec<f64> = population.iter().map(|t| tour_length(t, instance)).collect();
    let mut by_rank: Vec<usize> = (0..p).collect();
    by_rank.sort_by(|&a, &b| by_length(lengths[a], lengths[b]).then(a.cmp(&b)));
    let elite = by_rank[0];

    let mut weight = vec![0.0; p];
    for (r, &i) in by_rank.iter().enumerate() {
        weight[i] = linear_weight(p, r + 1);
    }
    if scheme == Selection::RankSpace {
        let distance: Vec<usize> = population.iter().map(|t| t.hamming(&population[elite])).collect();
        let mut by_diversity: Vec<usize> = by_rank[1..].to_vec();
        by_diversity.sort_by(|&a, &b| distance[b].cmp(&distance[a]).then(a.cmp(&b)));
        let rank_total: f64 = weight.iter().sum();
        let diversity_total: f64 = (2..=p).map(|r| linear_weight(p, r)).sum();
        let mut blended = vec![0.0; p];
        for (r, &i) in by_diversity.iter().enumerate() {
            blended[i] = 0.5 * weight[i] / rank_total
                + 0.5 * linear_weight(p, r + 2) / diversity_total.max(1.0);
        }
        weight = blended;
    }

    let mut survivors = vec![population[elite].clone()];
    let mut pool: Vec<usize> = by_rank[1..].to_vec();
    while survivors.len() < keep.min(p) {
        let weights: Vec<f64> = pool.iter().map(|&i| weight[i]).collect();
        let pick = pool.remove(sample_weighted(&weights, rng));
        survivors.push(population[pick].clone());
    }
    survivors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_decrease_with_rank() {
        let w: Vec<f64> = (1..=5).map(|r| linear_weight(5, r)).collect();
        assert_eq!(w, vec![5.0, 4.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn elite_always_survives() {
        let inst = TspInstance::circle(7, 1.0).unwrap();
        let mut rng = RandomSource::new(12);
        for scheme in [Selection::Rank, Selection::RankSpace] {
            for _ in 0..50 {
                let pop: Vec<Tour> = (0..12).map(|_| inst.random_tour(&mut rng)).collect();
                let best = pop
                    .iter()
                    .map(|t| tour_length(t, &inst))
                    .fold(f64::INFINITY, f64::min);
                let out = select(&pop, &inst, 6, scheme, &mut rng);
                assert_eq!(out.len(), 6);
                assert_eq!(tour_length(&out[0], &inst), best);
            }
        }
    }

    #[test]
    fn single_member() {
        let inst = TspInstance::circle(4, 1.0).unwrap();
        let t = inst.random_tour(&mut RandomSource::new(0));
        let out = select(std::slice::from_ref(&t), &inst, 1, Selection::Rank, &mut RandomSource::new(0));
        assert_eq!(out, vec![t]);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let inst = TspInstance::circle(5, 1.0).unwrap();
        let a = Tour::new(vec![0, 1, 2, 3, 4]).unwrap();
        let b = Tour::new(vec![1, 2, 3, 4, 0]).unwrap();
        let out = select(&[a.clone(), b], &inst, 1, Selection::Rank, &mut RandomSource::new(0));
        assert_eq!(out, vec![a]);
    }
}
