//! Test corpora: exhaustive small maps and seeded random maps.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::links::{medial_diagram, LinkDiagram};
use crate::map::{canonical_code, CombinatorialMap};

/// Edge involution pairing darts `2i` and `2i + 1`.
fn standard_alpha(edges: usize) -> Vec<usize> {
    (0..2 * edges).map(|d| d ^ 1).collect()
}

/// Steps through permutations of `0..n` in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every map with at most `max_edges` edges, one per isomorphism class,
/// connected or not. The edgeless maps are the empty map and a single point.
pub fn exhaustive(max_edges: usize) -> Vec<CombinatorialMap> {
    let mut out = vec![CombinatorialMap::empty(), CombinatorialMap::isolated_point()];
    for m in 1..=max_edges {
        let alpha = standard_alpha(m);
        let mut seen = HashSet::new();
        let mut sigma: Vec<usize> = (0..2 * m).collect();
        loop {
            let map = CombinatorialMap::new(sigma.clone(), alpha.clone(), 0).expect("valid permutation");
            if seen.insert(canonical_code(&map)) {
                out.push(map);
            }
            if !next_permutation(&mut sigma) {
                break;
            }
        }
    }
    out
}

/// A map with `edges` edges and a uniformly random rotation.
pub fn random_map(rng: &mut impl Rng, edges: usize) -> CombinatorialMap {
    let mut sigma: Vec<usize> = (0..2 * edges).collect();
    sigma.shuffle(rng);
    CombinatorialMap::new(sigma, standard_alpha(edges), 0).expect("valid permutation")
}

/// `count` random maps with edge counts drawn from `edges`.
pub fn random_maps(seed: u64, count: usize, edges: std::ops::RangeInclusive<usize>) -> Vec<CombinatorialMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(edges.clone());
            random_map(&mut rng, m)
        })
        .collect()
}

/// Connected random maps of the given genus, by rejection.
pub fn random_cellulations(
    seed: u64,
    count: usize,
    genus: usize,
    edges: std::ops::RangeInclusive<usize>,
) -> Vec<CombinatorialMap> {
    assert!(*edges.end() >= 2 * genus, "genus {genus} needs at least {} edges", 2 * genus);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (*edges.start()).max(2 * genus);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(lo..=*edges.end());
        let map = random_map(&mut rng, m);
        if map.num_components() == 1 && map.genus() == genus {
            out.push(map);
        }
    }
    out
}

/// Alternating diagrams on surfaces of the given genus, as medial diagrams
/// of random cellulations; the crossing count equals the edge count.
pub fn alternating_diagrams(
    seed: u64,
    count: usize,
    genus: usize,
    crossings: std::ops::RangeInclusive<usize>,
) -> Vec<LinkDiagram> {
    random_cellulations(seed, count, genus, crossings)
        .iter()
        .map(|g| medial_diagram(g).with_default_orientation())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_steps() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(p, vec![2, 1, 0]);
    }

    #[test]
    fn small_class_counts() {
        // one edge: a bridge or a loop; two edges on the sphere or torus
        let maps = exhaustive(2);
        let by_edges = |m: usize| maps.iter().filter(|x| x.num_edges() == m).count();
        assert_eq!(by_edges(0), 2);
        assert_eq!(by_edges(1), 2);
        assert!(maps.iter().any(|m| m.genus() == 1));
    }

    #[test]
    fn seeded_output_is_stable() {
        let a = random_maps(7, 5, 1..=6);
        let b = random_maps(7, 5, 1..=6);
        assert_eq!(a, b);
    }

    #[test]
    fn cellulations_have_requested_genus() {
        for m in random_cellulations(3, 10, 2, 4..=6) {
            assert_eq!(m.genus(), 2);
            assert_eq!(m.num_components(), 1);
        }
        let ds = alternating_diagrams(5, 4, 1, 2..=6);
        assert!(ds.iter().all(|d| d.genus() == 1 && (2..=6).contains(&d.num_crossings())));
    }
}
