//! The standard verification suites shared by the CLI and the test targets.
//!
//! Every suite returns a JSON-serialisable record containing no timings, so
//! two runs with the same parameters are byte-identical whatever executor
//! they use.

use std::collections::BTreeSet;
use std::time::Instant;

use ekrlab_core::exec::Executor;
use ekrlab_core::families::{count_independent, enumerate_independent, max_star, star};
use ekrlab_core::graph::EdgeRef;
use ekrlab_core::sweep::{evaluate_point, sweep_points, SweepBounds, SweepPoint, TheoremClass};
use ekrlab_core::{
    decompose, max_intersecting_with, path_certificate, star_components, verify_partition_lemma,
    Graph, GraphSpec, Limits, VertexSet,
};
use serde::{Deserialize, Serialize};

use crate::instances::lemma_instance;
use crate::json::{FamilyJson, PathCertificateJson, SweepJson, SweepRowJson};
use crate::table::TimedRow;

/// Desk-scale bounds for each theorem class.
pub fn standard_bounds(class: TheoremClass) -> SweepBounds {
    match class {
        TheoremClass::Empty => SweepBounds::new(10, 0),
        TheoremClass::CompleteUnion => SweepBounds::new(12, 0),
        TheoremClass::CyclePower | TheoremClass::PathPower => SweepBounds::new(12, 3),
        TheoremClass::Mixed => SweepBounds {
            r: Some(2),
            ..SweepBounds::new(12, 0)
        },
    }
}

pub fn run_sweep<X: Executor>(
    class: TheoremClass,
    bounds: &SweepBounds,
    limits: &Limits,
    exec: &X,
) -> Vec<TimedRow> {
    sweep_points(class, bounds)
        .iter()
        .map(|p| {
            let start = Instant::now();
            let row = evaluate_point(p, limits, exec);
            TimedRow {
                row,
                ms: start.elapsed().as_millis(),
            }
        })
        .collect()
}

pub fn sweep_json(class: TheoremClass, bounds: &SweepBounds, rows: &[TimedRow]) -> SweepJson {
    SweepJson {
        class: class.as_str().to_string(),
        n_max: bounds.n_max,
        k_max: bounds.k_max,
        r: bounds.r,
        rows: rows.iter().map(|t| SweepRowJson::from(&t.row)).collect(),
    }
}

/// Distinct graphs of the five standard sweeps with at most `n_max` vertices.
pub fn sweep_graphs(n_max: usize) -> Vec<GraphSpec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for class in TheoremClass::ALL {
        for p in sweep_points(class, &standard_bounds(class)) {
            if p.spec.order() <= n_max && seen.insert(p.spec.to_string()) {
                out.push(p.spec);
            }
        }
    }
    out
}

fn sweep_instances() -> Vec<SweepPoint> {
    TheoremClass::ALL
        .into_iter()
        .flat_map(|c| sweep_points(c, &standard_bounds(c)))
        .collect()
}

/// Both orientations of every edge: `(v, w)` absorbs `w` into `v`.
fn oriented_edges(g: &Graph) -> Vec<EdgeRef> {
    g.edges()
        .flat_map(|(a, b)| [EdgeRef::new(a, b), EdgeRef::new(b, a)])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFailureJson {
    pub edge: [usize; 2],
    /// Failed property labels, or the error that stopped the check.
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaInstanceJson {
    pub index: u64,
    pub graph: String,
    pub p: f64,
    #[serde(rename = "A")]
    pub a: FamilyJson,
    pub edges_checked: usize,
    pub failures: Vec<EdgeFailureJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaSuiteJson {
    pub seed: u64,
    pub count: u64,
    pub decompositions: usize,
    pub failures: usize,
    pub instances: Vec<LemmaInstanceJson>,
}

/// Edge compression of random intersecting families, checked along every
/// edge in both orientations.
pub fn lemma_suite<X: Executor>(seed: u64, count: u64, exec: &X) -> LemmaSuiteJson {
    let indices: Vec<u64> = (0..count).collect();
    let instances = exec.map(&indices, |_, &index| {
        let inst = lemma_instance(seed, index);
        let edges = oriented_edges(&inst.graph);
        let mut failures = Vec::new();
        for &e in &edges {
            let problems = match decompose(&inst.graph, e, &inst.family)
                .and_then(|d| verify_partition_lemma(&d))
            {
                Ok(report) => report
                    .failures()
                    .map(|c| c.property.label().to_string())
                    .collect(),
                Err(err) => vec![err.to_string()],
            };
            if !problems.is_empty() {
                failures.push(EdgeFailureJson {
                    edge: [e.v(), e.w()],
                    problems,
                });
            }
        }
        LemmaInstanceJson {
            index,
            graph: inst.graph.spec().to_string(),
            p: inst.p,
            a: (&inst.family).into(),
            edges_checked: edges.len(),
            failures,
        }
    });
    LemmaSuiteJson {
        seed,
        count,
        decompositions: instances.iter().map(|i| i.edges_checked).sum(),
        failures: instances.iter().map(|i| i.failures.len()).sum(),
        instances,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFailureJson {
    pub edge: Option<[usize; 2]>,
    pub x: usize,
    pub r: usize,
    pub problem: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarGraphJson {
    pub graph: String,
    /// `(e, x, r)` triples checked.
    pub identities: usize,
    /// Isolated-vertex star comparisons in `G`, `G/e` and `G↓e`.
    pub isolated_checks: usize,
    pub failures: Vec<StarFailureJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSuiteJson {
    pub r_max: usize,
    pub identities: usize,
    pub isolated_checks: usize,
    pub failures: usize,
    pub graphs: Vec<StarGraphJson>,
}

fn isolated_vertices(g: &Graph) -> Vec<usize> {
    (1..=g.order())
        .filter(|&v| g.neighbors(v).is_ok_and(|n| n.is_empty()))
        .collect()
}

/// An isolated vertex carries a largest star.
fn isolated_star_is_max(h: &Graph, x: usize, s: usize) -> bool {
    star(h, x, s).is_ok_and(|f| f.len() == max_star(h, s).size)
}

/// The star identity for every edge (both orientations), every vertex
/// surviving `G↓e` and every `r ≤ r_max`. For graphs with an isolated
/// vertex `x` that survives, also checks that `x` carries a largest star in
/// `G`, `G/e` and `G↓e`.
pub fn star_suite<X: Executor>(graphs: &[GraphSpec], r_max: usize, exec: &X) -> StarSuiteJson {
    let results = exec.map(graphs, |_, spec| {
        let g = spec.build().expect("sweep graphs are valid");
        let mut identities = 0;
        let mut isolated_checks = 0;
        let mut failures = Vec::new();
        let isolated = isolated_vertices(&g);
        for e in oriented_edges(&g) {
            let gone = g.closed_edge_neighborhood(e).expect("edge of g");
            let (contracted, cmap) = g.contract(e).expect("edge of g");
            let (down, dmap) = g.down(e).expect("edge of g");
            for x in (1..=g.order()).filter(|&x| !gone.contains(x)) {
                for r in 1..=r_max {
                    identities += 1;
                    let problem = match star_components(&g, e, x, r) {
                        Ok(sc) if sc.identity_holds() && sc.structure_holds() => None,
                        Ok(sc) => Some(format!("{} != {}", sc.lhs(), sc.rhs())),
                        Err(err) => Some(err.to_string()),
                    };
                    if let Some(problem) = problem {
                        failures.push(StarFailureJson {
                            edge: Some([e.v(), e.w()]),
                            x,
                            r,
                            problem,
                        });
                    }
                    if !isolated.contains(&x) {
                        continue;
                    }
                    let xc = cmap.image(x).ok().flatten().expect("x survives");
                    let xd = dmap.image(x).ok().flatten().expect("x survives");
                    for (name, h, hx) in [("G", &g, x), ("G/e", &contracted, xc), ("G↓e", &down, xd)] {
                        isolated_checks += 1;
                        if !isolated_star_is_max(h, hx, r) {
                            failures.push(StarFailureJson {
                                edge: Some([e.v(), e.w()]),
                                x,
                                r,
                                problem: format!("isolated star is not largest in {name}"),
                            });
                        }
                    }
                }
            }
        }
        StarGraphJson {
            graph: spec.to_string(),
            identities,
            isolated_checks,
            failures,
        }
    });
    StarSuiteJson {
        r_max,
        identities: results.iter().map(|g| g.identities).sum(),
        isolated_checks: results.iter().map(|g| g.isolated_checks).sum(),
        failures: results.iter().map(|g| g.failures.len()).sum(),
        graphs: results,
    }
}

/// Size of the largest pairwise-intersecting subfamily, by checking every
/// subfamily. Exponential; meant for at most about 20 sets.
pub fn subset_search_max(sets: &[VertexSet]) -> usize {
    let m = sets.len();
    assert!(m <= 24, "subset search over {m} sets");
    let meets: Vec<u32> = sets
        .iter()
        .map(|a| {
            sets.iter()
                .enumerate()
                .filter(|(_, b)| a.intersects(**b))
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    // good[mask]: the sets in `mask` pairwise intersect.
    let mut good = vec![false; 1 << m];
    good[0] = true;
    let mut best = 0;
    for mask in 1u32..1 << m {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = good[rest as usize] && meets[low] & rest == rest;
        good[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaseJson {
    pub graph: String,
    pub r: usize,
    pub sets: usize,
    pub solver: Option<usize>,
    pub oracle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSuiteJson {
    pub max_sets: usize,
    pub cases: usize,
    pub mismatches: usize,
    pub records: Vec<OracleCaseJson>,
}

/// Sweep points and random lemma-suite graphs (at every `r ≤ 4`) whose
/// `I^(r)` has between 1 and `max_sets` members.
pub fn oracle_cases(seed: u64, random_count: u64, max_sets: usize) -> Vec<(GraphSpec, usize)> {
    let mut cases: Vec<(GraphSpec, usize)> =
        sweep_instances().into_iter().map(|p| (p.spec, p.r)).collect();
    for i in 0..random_count {
        let spec = lemma_instance(seed, i).graph.spec();
        for r in 1..=4 {
            cases.push((spec.clone(), r));
        }
    }
    let mut seen = BTreeSet::new();
    cases.retain(|(spec, r)| {
        let g = spec.build().expect("valid spec");
        let count = count_independent(&g, *r);
        (1..=max_sets).contains(&count) && seen.insert((spec.to_string(), *r))
    });
    cases
}

pub fn oracle_suite<X: Executor>(
    cases: &[(GraphSpec, usize)],
    max_sets: usize,
    limits: &Limits,
    exec: &X,
) -> OracleSuiteJson {
    let records = exec.map(cases, |_, (spec, r)| {
        let g = spec.build().expect("valid spec");
        let all = enumerate_independent(&g, *r);
        // Each case is small; the search itself stays sequential.
        let solver = max_intersecting_with(&g, *r, limits, &ekrlab_core::exec::Sequential)
            .ok()
            .map(|m| m.size);
        OracleCaseJson {
            graph: spec.to_string(),
            r: *r,
            sets: all.len(),
            solver,
            oracle: subset_search_max(all.sets()),
        }
    });
    OracleSuiteJson {
        max_sets,
        cases: records.len(),
        mismatches: records.iter().filter(|c| c.solver != Some(c.oracle)).count(),
        records,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSuiteJson {
    pub n_max: usize,
    pub k_max: usize,
    pub certificates: usize,
    pub failures: usize,
    pub errors: Vec<String>,
    pub records: Vec<PathCertificateJson>,
}

/// `(n, k, r)` with `n ≤ n_max`, `k ≤ k_max`, `n ≥ k + 3` and a nonempty star at 1.
pub fn path_cases(n_max: usize, k_max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=k_max {
            if n < k + 3 {
                continue;
            }
            let g = Graph::path_power(n, k).expect("small order");
            for r in 1.. {
                if star(&g, 1, r).expect("vertex 1").is_empty() {
                    break;
                }
                out.push((n, k, r));
            }
        }
    }
    out
}

/// The path-power certificate with `A` the full star at vertex 1.
pub fn path_suite<X: Executor>(n_max: usize, k_max: usize, exec: &X) -> PathSuiteJson {
    let cases = path_cases(n_max, k_max);
    let results = exec.map(&cases, |_, &(n, k, r)| {
        let g = Graph::path_power(n, k).expect("small order");
        let a = star(&g, 1, r).expect("vertex 1");
        path_certificate(n, k, r, &a)
            .map(|c| PathCertificateJson::from(&c))
            .map_err(|e| format!("n={n} k={k} r={r}: {e}"))
    });
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for res in results {
        match res {
            Ok(c) => records.push(c),
            Err(e) => errors.push(e),
        }
    }
    PathSuiteJson {
        n_max,
        k_max,
        certificates: records.len(),
        failures: records.iter().filter(|c| !c.passed).count() + errors.len(),
        errors,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_search_small() {
        let s = |l: &[usize]| VertexSet::try_from_labels(l.iter().copied()).unwrap();
        assert_eq!(subset_search_max(&[]), 0);
        assert_eq!(subset_search_max(&[s(&[1, 2]), s(&[3, 4])]), 1);
        assert_eq!(subset_search_max(&[s(&[1, 2]), s(&[2, 3]), s(&[1, 3]), s(&[4, 5])]), 3);
    }

    #[test]
    fn path_cases_respect_bounds() {
        let cases = path_cases(6, 2);
        assert!(cases.contains(&(4, 1, 2)));
        assert!(!cases.iter().any(|&(n, k, _)| n < k + 3));
        assert!(!cases.contains(&(4, 1, 3)));
    }
}
