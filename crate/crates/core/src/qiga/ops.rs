use serde::Serialize;

use crate::qiga::Tour;
use crate::RandomSource;

/// Swaps two positions.
pub fn swap_positions(tour: &Tour, i: usize, j: usize) -> Tour {
    let mut order = tour.order().to_vec();
    order.swap(i, j);
    Tour::from_vec_unchecked(order)
}

/// Exchanges two distinct, uniformly chosen positions.
pub fn mutate(tour: &Tour, rng: &mut RandomSource) -> Tour {
    let n = tour.len();
    if n < 2 {
        return tour.clone();
    }
    let i = rng.below(n);
    let j = (i + 1 + rng.below(n - 1)) % n;
    swap_positions(tour, i, j)
}

/// Even 1-based positions come from `p1`, odd ones from `p2`. A city that is
/// already placed is replaced by the next unused city in cyclic id order.
pub fn crossover(p1: &Tour, p2: &Tour) -> Tour {
    let n = p1.len();
    let mut used = vec![false; n];
    let order = (0..n)
        .map(|k| {
            let mut city = if k % 2 == 1 { p1.order()[k] } else { p2.order()[k] };
            while used[city] {
                city = (city + 1) % n;
            }
            used[city] = true;
            city
        })
        .collect();
    Tour::from_vec_unchecked(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InterferenceEvent {
    pub index: usize,
    pub a: usize,
    pub b: usize,
}

/// For every chromosome index and every universe pair `a < b` in
/// lexicographic order, with probability `prob` replaces member `a` by
/// `crossover(a, b)` and member `b` by `crossover(b, a)`.
pub fn interfere(
    universes: &mut [Vec<Tour>],
    prob: f64,
    rng: &mut RandomSource,
) -> Vec<InterferenceEvent> {
    let mut events = Vec::new();
    let size = universes.iter().map(Vec::len).min().unwrap_or(0);
    for index in 0..size {
        for a in 0..universes.len() {
            for b in a + 1..universes.len() {
                if !rng.chance(prob) {
                    continue;
                }
                let ab = crossover(&universes[a][index], &universes[b][index]);
                let ba = crossover(&universes[b][index], &universes[a][index]);
                universes[a][index] = ab;
                universes[b][index] = ba;
                events.push(InterferenceEvent { index, a, b });
            }
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qiga::TspInstance;

    fn letters(s: &str) -> Tour {
        Tour::new(s.bytes().map(|b| usize::from(b - b'A')).collect()).unwrap()
    }

    fn show(t: &Tour) -> String {
        t.order().iter().map(|&c| char::from(b'A' + c as u8)).collect()
    }

    #[test]
    fn swap_definition() {
        let t = letters("ABCD");
        assert_eq!(show(&swap_positions(&t, 1, 3)), "ADCB");
        assert_eq!(swap_positions(&swap_positions(&t, 1, 3), 1, 3), t);
    }

    #[test]
    fn mutation_swaps_exactly_two() {
        let mut rng = RandomSource::new(4);
        let t = letters("ABCDEFG");
        for _ in 0..200 {
            let m = mutate(&t, &mut rng);
            assert!(m.is_valid(7));
            assert_eq!(m.hamming(&t), 2);
        }
    }

    #[test]
    fn nine_city_child() {
        let child = crossover(&letters("ACDIBGHFE"), &letters("CGEHBAIDF"));
        assert_eq!(show(&child), "CDEIBGAFH");
    }

    #[test]
    fn identical_parents() {
        let p = letters("EBDAC");
        assert_eq!(crossover(&p, &p), p);
    }

    #[test]
    fn all_five_city_children_are_tours() {
        let mut perms = vec![vec![0usize, 1, 2, 3, 4]];
        while let Some(next) = {
            let mut p = perms.last().unwrap().clone();
            let i = (0..4).rev().find(|&i| p[i] < p[i + 1]);
            i.map(|i| {
                let j = (i + 1..5).rev().find(|&j| p[j] > p[i]).unwrap();
                p.swap(i, j);
                p[i + 1..].reverse();
                p
            })
        } {
            perms.push(next);
        }
        assert_eq!(perms.len(), 120);
        let tours: Vec<Tour> = perms.into_iter().map(|p| Tour::new(p).unwrap()).collect();
        for a in &tours {
            for b in &tours {
                assert!(crossover(a, b).is_valid(5));
            }
        }
    }

    #[test]
    fn interference_edge_cases() {
        let inst = TspInstance::circle(6, 1.0).unwrap();
        let mut rng = RandomSource::new(8);
        let pops: Vec<Vec<Tour>> = (0..3)
            .map(|_| (0..5).map(|_| inst.random_tour(&mut rng)).collect())
            .collect();

        let mut same = pops.clone();
        assert!(interfere(&mut same, 0.0, &mut rng).is_empty());
        assert_eq!(same, pops);

        let mut single = vec![pops[0].clone()];
        assert!(interfere(&mut single, 1.0, &mut rng).is_empty());

        let run = |seed| {
            let mut p = pops.clone();
            let events = interfere(&mut p, 0.5, &mut RandomSource::new(seed));
            (p, events)
        };
        assert_eq!(run(3), run(3));
        let (after, events) = run(3);
        assert!(!events.is_empty());
        assert!(after.iter().flatten().all(|t| t.is_valid(6)));
    }
}
