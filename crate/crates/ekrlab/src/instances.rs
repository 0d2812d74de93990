//! Seeded random instances for the property suites.
//!
//! Instance `i` of seed `s` draws from its own ChaCha stream, so it does not
//! depend on how many instances are generated or on which thread.

use ekrlab_core::families::{enumerate_independent, star};
use ekrlab_core::{Family, Graph, GraphSpec, VertexSet};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// A graph, an arity with `I^(r)` nonempty, and an intersecting family in it.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub p: f64,
    pub family: Family,
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `G(n, p)` on `1..=n`; the spec records the edge list.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    GraphSpec::edges(n, edges)
        .build()
        .expect("orders stay far below the cap")
}

/// A random subfamily of a random nonempty star, with random independent
/// `r`-sets mixed in, greedily filtered to stay intersecting.
pub fn random_intersecting(rng: &mut impl Rng, g: &Graph, r: usize) -> Family {
    let all = enumerate_independent(g, r);
    assert!(!all.is_empty());
    let centres: Vec<usize> = (1..=g.order())
        .filter(|&v| all.iter().any(|s| s.contains(v)))
        .collect();
    let centre = *centres.choose(rng).expect("some vertex lies in an r-set");
    let base = star(g, centre, r).expect("centre is a vertex");
    let mut candidates: Vec<VertexSet> = base.iter().filter(|_| rng.random_bool(0.5)).collect();
    if candidates.is_empty() {
        candidates.push(*base.sets().choose(rng).expect("star is nonempty"));
    }
    let extra = rng.random_range(0..=3);
    let mut mutants: Vec<VertexSet> = (0..extra)
        .map(|_| *all.sets().choose(rng).expect("nonempty"))
        .collect();
    mutants.shuffle(rng);
    candidates.extend(mutants);
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in candidates {
        if kept.iter().all(|k| k.intersects(s)) {
            kept.push(s);
        }
    }
    Family::new(r, kept).expect("uniform arity")
}

/// `n` in `2..=10`, `p` from [`EDGE_PROBABILITIES`], `r` in `1..=3` with `I^(r)` nonempty.
pub fn lemma_instance(seed: u64, index: u64) -> Instance {
    let mut rng = rng_for(seed, index);
    let n = rng.random_range(2..=10);
    let p = *EDGE_PROBABILITIES.choose(&mut rng).expect("nonempty");
    let graph = gnp(&mut rng, n, p);
    let mut r = rng.random_range(1..=3);
    while enumerate_independent(&graph, r).is_empty() {
        r -= 1;
    }
    let family = random_intersecting(&mut rng, &graph, r);
    Instance { graph, p, family }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible_and_valid() {
        for i in 0..200 {
            let a = lemma_instance(7, i);
            assert_eq!(a, lemma_instance(7, i));
            assert!(a.family.is_intersecting());
            assert!(!a.family.is_empty());
            a.family.check_independent_in(&a.graph).unwrap();
            assert!((2..=10).contains(&a.graph.order()));
        }
        assert_ne!(lemma_instance(7, 0), lemma_instance(8, 0));
    }
}
