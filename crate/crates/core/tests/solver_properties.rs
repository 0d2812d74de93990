use ekrlab_core::exec::{Executor, Sequential};
use ekrlab_core::families::count_independent;
use ekrlab_core::{
    ekr_verdict, ekr_verdict_with, enumerate_independent, enumerate_maximum_families, max_intersecting,
    max_intersecting_with, max_star, Graph, Limits, Strictness, VertexSet,
};
use proptest::prelude::*;

/// Evaluates items back to front, then restores input order.
struct Backwards;

impl Executor for Backwards {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(usize, &T) -> R + Sync,
    {
        let mut out: Vec<(usize, R)> = items.iter().enumerate().rev().map(|(i, t)| (i, f(i, t))).collect();
        out.reverse();
        out.into_iter().map(|(_, r)| r).collect()
    }
}

/// Largest pairwise-intersecting subfamily by growing every clique in
/// index order; unrelated to the colouring search.
fn naive_max(sets: &[VertexSet]) -> usize {
    fn grow(sets: &[VertexSet], chosen: &mut Vec<VertexSet>, from: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for i in from..sets.len() {
            if chosen.iter().all(|c| c.intersects(sets[i])) {
                chosen.push(sets[i]);
                grow(sets, chosen, i + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(sets, &mut Vec::new(), 0, &mut best);
    best
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 1..=n {
                for b in a + 1..=n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_naive_search(g in graph_strategy(), r in 1usize..=4) {
        let all = enumerate_independent(&g, r);
        prop_assume!(all.len() <= 40);
        let m = max_intersecting(&g, r, &Limits::default()).unwrap();
        prop_assert_eq!(m.size, naive_max(all.sets()));
        prop_assert!(m.size >= max_star(&g, r).size);
        prop_assert_eq!(m.witness.len(), m.size);
        prop_assert!(m.witness.is_intersecting());
        m.witness.check_independent_in(&g).unwrap();
    }

    #[test]
    fn verdict_is_consistent(g in graph_strategy(), r in 1usize..=4) {
        prop_assume!(count_independent(&g, r) <= 60);
        let rep = ekr_verdict(&g, r, &Limits::default()).unwrap();
        prop_assert_eq!(rep.is_ekr, rep.max_intersecting_size <= rep.max_star_size);
        prop_assert_eq!(rep.max_star_size, max_star(&g, r).size);
        prop_assert_eq!(rep.non_star_witness.is_some(), rep.strictness == Strictness::NotStrict);
        if let Some(w) = &rep.non_star_witness {
            prop_assert_eq!(w.len(), rep.max_intersecting_size);
            prop_assert!(w.is_intersecting() && !w.is_star_like());
        }
        prop_assert_eq!(rep.strictness == Strictness::Vacuous, rep.stats.independent_sets == 0);
        // Strict means every maximum family has a common vertex.
        if rep.strictness == Strictness::Strict {
            let all = enumerate_maximum_families(&g, r, &Limits::default()).unwrap();
            prop_assert!(all.complete);
            prop_assert!(all.families.iter().all(|f| f.is_star_like()));
        }
    }

    #[test]
    fn executor_does_not_change_results(g in graph_strategy(), r in 1usize..=3) {
        prop_assume!(count_independent(&g, r) <= 80);
        let limits = Limits::default();
        prop_assert_eq!(
            max_intersecting_with(&g, r, &limits, &Sequential).unwrap(),
            max_intersecting_with(&g, r, &limits, &Backwards).unwrap()
        );
        prop_assert_eq!(
            ekr_verdict_with(&g, r, &limits, &Sequential).unwrap(),
            ekr_verdict_with(&g, r, &limits, &Backwards).unwrap()
        );
    }

    #[test]
    fn removing_an_edge_never_loses_independent_sets(g in graph_strategy(), r in 0usize..=4, pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let drop = pick.index(edges.len());
        let kept: Vec<_> = edges.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, e)| *e).collect();
        let h = Graph::from_edges(g.order(), kept).unwrap();
        prop_assert!(count_independent(&h, r) >= count_independent(&g, r));
    }
}

#[test]
fn maximum_families_are_valid() {
    for (spec, r) in [("cycle:8:1", 3), ("union:complete:2+complete:2+complete:2", 3), ("path:6:1", 2)] {
        let g = ekrlab_core::parse_spec(spec).unwrap();
        let all = enumerate_maximum_families(&g, r, &Limits::default()).unwrap();
        assert!(all.complete, "{spec}");
        let mut seen = std::collections::BTreeSet::new();
        for f in &all.families {
            assert_eq!(f.len(), all.size);
            assert!(f.is_intersecting());
            f.check_independent_in(&g).unwrap();
            assert!(seen.insert(f.sets().to_vec()), "{spec}: repeated family");
        }
    }
}

#[test]
fn even_parity_transversals_are_maximum() {
    // In three disjoint edges, the transversals with an even number of
    // upper endpoints pairwise share a vertex.
    let g = ekrlab_core::parse_spec("union:complete:2+complete:2+complete:2").unwrap();
    let rep = ekr_verdict(&g, 3, &Limits::default()).unwrap();
    assert_eq!(rep.max_star_size, 4);
    assert_eq!(rep.max_intersecting_size, 4);
    assert_eq!(rep.strictness, Strictness::NotStrict);
    let even = ekrlab_core::Family::new(
        3,
        [[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]
            .iter()
            .map(|s| VertexSet::try_from_labels(s.iter().copied()).unwrap()),
    )
    .unwrap();
    assert!(even.is_intersecting() && !even.is_star_like());
    let all = enumerate_maximum_families(&g, 3, &Limits::default()).unwrap();
    assert!(all.families.contains(&even));
}
