//! Exact maximum intersecting families and EKR verdicts.
//!
//! A maximum intersecting subfamily of `I^(r)(G)` is a maximum clique of the
//! intersection graph whose vertices are the independent `r`-sets and whose
//! edges join sets that meet. Cliques are found by branch and bound with a
//! greedy colouring bound (each colour class is a family of pairwise
//! disjoint sets, of which a clique uses at most one). Vertices are ordered
//! by decreasing degree, ties broken lexicographically.
//!
//! The root of the search is split into independent subproblems. Each one is
//! solved with its own bound seeded from the largest star, never from the
//! progress of other subproblems, and results are merged in subproblem
//! order. Sizes, witnesses and node counts are therefore the same for any
//! [`Executor`].

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;
use core::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::exec::{Executor, Sequential};
use crate::families::{for_each_independent, max_star, star, Family, MaxStar};
use crate::graph::{Graph, Vertex};
use crate::spec::GraphSpec;
use crate::vertex_set::VertexSet;

/// Resource caps. Every cap is counted in deterministic units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Search nodes allowed per phase.
    pub node_budget: u64,
    /// Maximum families enumerated when testing strictness.
    pub family_cap: u64,
    /// Largest `|I^(r)(G)|` the solver accepts.
    pub max_sets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: 1_000_000_000,
            family_cap: 1_000_000,
            max_sets: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("more than {cap} independent sets; raise the set cap")]
    TooManySets { cap: usize },
    #[error("search node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// `|I^(r)(G)|`.
    pub independent_sets: usize,
    pub nodes: u64,
    /// Maximum families visited while testing strictness.
    pub max_families: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxIntersecting {
    pub size: usize,
    pub witness: Family,
    pub star: MaxStar,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    Strict,
    NotStrict,
    /// `I^(r)(G)` is empty.
    Vacuous,
    /// Strictness enumeration hit the node budget or the family cap.
    UnknownCapHit,
}

impl Strictness {
    pub fn as_str(self) -> &'static str {
        match self {
            Strictness::Strict => "strict",
            Strictness::NotStrict => "not-strict",
            Strictness::Vacuous => "vacuous",
            Strictness::UnknownCapHit => "unknown-cap-hit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Strictness::Strict,
            Strictness::NotStrict,
            Strictness::Vacuous,
            Strictness::UnknownCapHit,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkrReport {
    pub graph: GraphSpec,
    pub r: usize,
    pub max_star_size: usize,
    pub star_argmax: Vec<Vertex>,
    pub max_intersecting_size: usize,
    /// An intersecting family of size `max_intersecting_size`.
    pub witness: Family,
    pub is_ekr: bool,
    pub strictness: Strictness,
    /// A maximum family with no common vertex; present iff not strict.
    pub non_star_witness: Option<Family>,
    pub stats: SearchStats,
}

/// Bitset over search-order indices.
type Row = Vec<u64>;

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear_bit(row: &mut [u64], i: usize) {
    row[i / 64] &= !(1u64 << (i % 64));
}

fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Halt {
    Budget,
    FamilyCap,
    Cancelled,
}

/// Called on each clique of the target size.
type Visit<'a> = dyn FnMut(&[usize]) -> Result<ControlFlow<()>, Halt> + 'a;

/// Root subproblem: cliques whose first vertex is `vertex`, drawn from `candidates`.
struct RootTask {
    vertex: usize,
    candidates: Row,
}

/// Intersection graph of `I^(r)(G)` in search order.
struct CliqueSearch {
    sets: Vec<VertexSet>,
    words: usize,
    adj: Vec<Row>,
}

struct Counter<'a> {
    nodes: u64,
    budget: u64,
    /// Nodes spent by all phase-one tasks together.
    shared: Option<&'a AtomicU64>,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<(), Halt> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Halt::Budget);
        }
        if let Some(shared) = self.shared {
            if shared.fetch_add(1, Ordering::Relaxed) >= self.budget {
                return Err(Halt::Budget);
            }
        }
        Ok(())
    }
}

impl CliqueSearch {
    fn new(family: &[VertexSet]) -> Self {
        let n = family.len();
        let mut degree = vec![0usize; n];
        for i in 0..n {
            for j in i + 1..n {
                if family[i].intersects(family[j]) {
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        // `family` is canonical, so the index breaks ties lexicographically.
        order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
        let sets: Vec<VertexSet> = order.iter().map(|&i| family[i]).collect();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in i + 1..n {
                if sets[i].intersects(sets[j]) {
                    adj[i][j / 64] |= 1 << (j % 64);
                    adj[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        CliqueSearch { sets, words, adj }
    }

    fn full(&self) -> Row {
        let mut row = vec![0u64; self.words];
        for i in 0..self.sets.len() {
            row[i / 64] |= 1 << (i % 64);
        }
        row
    }

    fn restrict(&self, p: &[u64], v: usize) -> Row {
        p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect()
    }

    /// Greedy sequential colouring of `p`; colours are non-decreasing along the output.
    fn color(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = p.to_vec();
        let mut class = vec![0u64; self.words];
        let mut color = 0;
        while !is_zero(&uncolored) {
            color += 1;
            class.copy_from_slice(&uncolored);
            while let Some(v) = first_bit(&class) {
                clear_bit(&mut uncolored, v);
                clear_bit(&mut class, v);
                for (c, a) in class.iter_mut().zip(&self.adj[v]) {
                    *c &= !a;
                }
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    /// Root split. Subproblems whose bound cannot beat `floor` (or reach it,
    /// when `reach` is set) are dropped.
    fn root_tasks(&self, floor: usize, reach: bool) -> Vec<RootTask> {
        let all = self.full();
        let (order, colors) = self.color(&all);
        let mut remaining = all;
        let mut tasks = Vec::new();
        for i in (0..order.len()).rev() {
            let keep = if reach { colors[i] >= floor } else { colors[i] > floor };
            if !keep {
                break;
            }
            let v = order[i];
            tasks.push(RootTask {
                vertex: v,
                candidates: self.restrict(&remaining, v),
            });
            clear_bit(&mut remaining, v);
        }
        tasks
    }

    fn grow_max(
        &self,
        clique: &mut Vec<usize>,
        p: Row,
        best: &mut Vec<usize>,
        floor: usize,
        counter: &mut Counter<'_>,
    ) -> Result<(), Halt> {
        counter.tick()?;
        let (order, colors) = self.color(&p);
        let mut p = p;
        for i in (0..order.len()).rev() {
            if clique.len() + colors[i] <= best.len().max(floor) {
                return Ok(());
            }
            let v = order[i];
            clique.push(v);
            let next = self.restrict(&p, v);
            if is_zero(&next) {
                if clique.len() > best.len().max(floor) {
                    best.clone_from(clique);
                }
            } else {
                self.grow_max(clique, next, best, floor, counter)?;
            }
            clique.pop();
            clear_bit(&mut p, v);
        }
        Ok(())
    }

    fn grow_exact(
        &self,
        clique: &mut Vec<usize>,
        p: Row,
        target: usize,
        counter: &mut Counter<'_>,
        visit: &mut Visit<'_>,
    ) -> Result<ControlFlow<()>, Halt> {
        counter.tick()?;
        let (order, colors) = self.color(&p);
        let mut p = p;
        for i in (0..order.len()).rev() {
            if clique.len() + colors[i] < target {
                break;
            }
            let v = order[i];
            clique.push(v);
            let flow = if clique.len() == target {
                visit(clique)?
            } else {
                let next = self.restrict(&p, v);
                self.grow_exact(clique, next, target, counter, visit)?
            };
            clique.pop();
            if flow.is_break() {
                return Ok(flow);
            }
            clear_bit(&mut p, v);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn family(&self, r: usize, clique: &[usize]) -> Family {
        Family::new(r, clique.iter().map(|&i| self.sets[i])).expect("uniform arity")
    }
}

struct MaxOutcome {
    nodes: u64,
    best: Vec<usize>,
    halted: bool,
}

struct EnumOutcome {
    nodes: u64,
    families: u64,
    halt: Option<Halt>,
    /// Families in visit order (collect mode) or the first non-star (verdict mode).
    found: Vec<Vec<usize>>,
}

/// `I^(r)(G)` prepared for search.
struct Prepared {
    r: usize,
    search: CliqueSearch,
    star: MaxStar,
    star_witness: Family,
}

fn prepare(g: &Graph, r: usize, limits: &Limits) -> Result<Prepared, SolverError> {
    let mut sets = Vec::new();
    let over = for_each_independent(g, r, |s| {
        if sets.len() == limits.max_sets {
            return ControlFlow::Break(());
        }
        sets.push(s);
        ControlFlow::Continue(())
    });
    if over.is_break() {
        return Err(SolverError::TooManySets {
            cap: limits.max_sets,
        });
    }
    let star_info = max_star(g, r);
    let star_witness = match star_info.argmax.first() {
        Some(&v) => star(g, v, r).expect("argmax is a vertex"),
        None => Family::empty(r),
    };
    Ok(Prepared {
        r,
        search: CliqueSearch::new(&sets),
        star: star_info,
        star_witness,
    })
}

fn solve_max<X: Executor>(
    prep: &Prepared,
    limits: &Limits,
    exec: &X,
) -> Result<(usize, Family, u64), SolverError> {
    let search = &prep.search;
    let floor = prep.star.size;
    if search.sets.is_empty() {
        return Ok((0, Family::empty(prep.r), 0));
    }
    let spent = AtomicU64::new(0);
    let tasks = search.root_tasks(floor, false);
    let outcomes = exec.map(&tasks, |_, task| {
        let mut counter = Counter {
            nodes: 0,
            budget: limits.node_budget,
            shared: Some(&spent),
        };
        let mut clique = vec![task.vertex];
        let mut best = Vec::new();
        let halted = if is_zero(&task.candidates) {
            if 1 > floor {
                best = clique.clone();
            }
            counter.tick().is_err()
        } else {
            search
                .grow_max(&mut clique, task.candidates.clone(), &mut best, floor, &mut counter)
                .is_err()
        };
        MaxOutcome {
            nodes: counter.nodes,
            best,
            halted,
        }
    });
    let budget_err = SolverError::BudgetExhausted {
        budget: limits.node_budget,
    };
    if outcomes.iter().any(|o| o.halted) {
        return Err(budget_err);
    }
    let nodes: u64 = outcomes.iter().map(|o| o.nodes).sum::<u64>() + 1;
    if nodes > limits.node_budget {
        return Err(budget_err);
    }
    let mut best: Option<&Vec<usize>> = None;
    for o in &outcomes {
        if o.best.len() > best.map_or(floor, |b| b.len()) {
            best = Some(&o.best);
        }
    }
    Ok(match best {
        Some(clique) => (clique.len(), search.family(prep.r, clique), nodes),
        None => (floor, prep.star_witness.clone(), nodes),
    })
}

/// Enumerates cliques of exactly `target` sets. In verdict mode each
/// subproblem stops at its first family with no common vertex and later
/// subproblems are cancelled; otherwise up to `family_cap` families are kept.
fn enumerate_exact<X: Executor>(
    prep: &Prepared,
    target: usize,
    verdict_mode: bool,
    limits: &Limits,
    exec: &X,
) -> Vec<EnumOutcome> {
    let search = &prep.search;
    let tasks = search.root_tasks(target, true);
    let first_found = AtomicUsize::new(usize::MAX);
    exec.map(&tasks, |index, task| {
        let mut counter = Counter {
            nodes: 0,
            budget: limits.node_budget,
            shared: None,
        };
        let mut families = 0u64;
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut visit = |clique: &[usize]| -> Result<ControlFlow<()>, Halt> {
            if first_found.load(Ordering::Relaxed) < index {
                return Err(Halt::Cancelled);
            }
            families += 1;
            if families > limits.family_cap {
                return Err(Halt::FamilyCap);
            }
            if verdict_mode {
                let common = clique
                    .iter()
                    .fold(VertexSet::prefix(64), |acc, &i| acc.intersection(search.sets[i]));
                if common.is_empty() {
                    found.push(clique.to_vec());
                    first_found.fetch_min(index, Ordering::Relaxed);
                    return Ok(ControlFlow::Break(()));
                }
            } else {
                found.push(clique.to_vec());
            }
            Ok(ControlFlow::Continue(()))
        };
        let mut clique = vec![task.vertex];
        let result = if target == 1 {
            counter.tick().and_then(|_| visit(&clique))
        } else {
            search.grow_exact(&mut clique, task.candidates.clone(), target, &mut counter, &mut visit)
        };
        EnumOutcome {
            nodes: counter.nodes,
            families,
            halt: result.err(),
            found,
        }
    })
}

/// Exact maximum intersecting subfamily of `I^(r)(G)`.
pub fn max_intersecting(g: &Graph, r: usize, limits: &Limits) -> Result<MaxIntersecting, SolverError> {
    max_intersecting_with(g, r, limits, &Sequential)
}

pub fn max_intersecting_with<X: Executor>(
    g: &Graph,
    r: usize,
    limits: &Limits,
    exec: &X,
) -> Result<MaxIntersecting, SolverError> {
    let prep = prepare(g, r, limits)?;
    let (size, witness, nodes) = solve_max(&prep, limits, exec)?;
    Ok(MaxIntersecting {
        size,
        witness,
        stats: SearchStats {
            independent_sets: prep.search.sets.len(),
            nodes,
            max_families: 0,
        },
        star: prep.star,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximumFamilies {
    pub size: usize,
    /// Canonical families in search order.
    pub families: Vec<Family>,
    /// False when the node budget or family cap cut the listing short.
    pub complete: bool,
    pub stats: SearchStats,
}

/// All intersecting families of maximum size, up to `limits.family_cap`.
pub fn enumerate_maximum_families(
    g: &Graph,
    r: usize,
    limits: &Limits,
) -> Result<MaximumFamilies, SolverError> {
    enumerate_maximum_families_with(g, r, limits, &Sequential)
}

pub fn enumerate_maximum_families_with<X: Executor>(
    g: &Graph,
    r: usize,
    limits: &Limits,
    exec: &X,
) -> Result<MaximumFamilies, SolverError> {
    let prep = prepare(g, r, limits)?;
    let (size, _, max_nodes) = solve_max(&prep, limits, exec)?;
    let mut stats = SearchStats {
        independent_sets: prep.search.sets.len(),
        nodes: max_nodes,
        max_families: 0,
    };
    if size == 0 {
        stats.max_families = 1;
        return Ok(MaximumFamilies {
            size,
            families: vec![Family::empty(r)],
            complete: true,
            stats,
        });
    }
    let outcomes = enumerate_exact(&prep, size, false, limits, exec);
    let mut families = Vec::new();
    let mut complete = true;
    let mut enum_nodes = 0u64;
    for o in &outcomes {
        enum_nodes += o.nodes;
        for clique in &o.found {
            if families.len() as u64 == limits.family_cap {
                complete = false;
                break;
            }
            families.push(prep.search.family(r, clique));
        }
        if o.halt.is_some() || enum_nodes > limits.node_budget {
            complete = false;
        }
        if !complete {
            break;
        }
    }
    stats.nodes += enum_nodes;
    stats.max_families = families.len() as u64;
    Ok(MaximumFamilies {
        size,
        families,
        complete,
        stats,
    })
}

/// Decides r-EKR exactly and strictness as far as the caps allow.
pub fn ekr_verdict(g: &Graph, r: usize, limits: &Limits) -> Result<EkrReport, SolverError> {
    ekr_verdict_with(g, r, limits, &Sequential)
}

pub fn ekr_verdict_with<X: Executor>(
    g: &Graph,
    r: usize,
    limits: &Limits,
    exec: &X,
) -> Result<EkrReport, SolverError> {
    let prep = prepare(g, r, limits)?;
    let (size, witness, max_nodes) = solve_max(&prep, limits, exec)?;
    let mut stats = SearchStats {
        independent_sets: prep.search.sets.len(),
        nodes: max_nodes,
        max_families: 0,
    };
    let star_size = prep.star.size;
    let is_ekr = size <= star_size;
    let (strictness, non_star_witness) = if prep.search.sets.is_empty() {
        (Strictness::Vacuous, None)
    } else if !is_ekr {
        // Larger than every star, so no star contains it.
        (Strictness::NotStrict, Some(witness.clone()))
    } else {
        let outcomes = enumerate_exact(&prep, size, true, limits, exec);
        let mut verdict = (Strictness::Strict, None);
        for o in &outcomes {
            stats.nodes += o.nodes;
            stats.max_families += o.families;
            if let Some(clique) = o.found.first() {
                verdict = (Strictness::NotStrict, Some(prep.search.family(r, clique)));
                break;
            }
            if o.halt.is_some()
                || stats.nodes - max_nodes > limits.node_budget
                || stats.max_families > limits.family_cap
            {
                verdict = (Strictness::UnknownCapHit, None);
                break;
            }
        }
        verdict
    };
    Ok(EkrReport {
        graph: g.spec(),
        r,
        max_star_size: star_size,
        star_argmax: prep.star.argmax,
        max_intersecting_size: size,
        witness,
        is_ekr,
        strictness,
        non_star_witness,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::enumerate_independent;

    fn set(labels: &[Vertex]) -> VertexSet {
        VertexSet::try_from_labels(labels.iter().copied()).unwrap()
    }

    fn fam(r: usize, sets: &[&[Vertex]]) -> Family {
        Family::new(r, sets.iter().map(|s| set(s))).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    /// Largest intersecting subfamily by trying every subfamily.
    fn brute_force_max(g: &Graph, r: usize) -> usize {
        let all = enumerate_independent(g, r);
        let sets = all.sets();
        assert!(sets.len() <= 16);
        (0u32..1 << sets.len())
            .filter(|mask| {
                let chosen: Vec<_> = (0..sets.len()).filter(|i| mask >> i & 1 == 1).collect();
                chosen
                    .iter()
                    .all(|&i| chosen.iter().all(|&j| sets[i].intersects(sets[j])))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn max_examples() {
        let e4 = Graph::empty(4).unwrap();
        let m = max_intersecting(&e4, 2, &limits()).unwrap();
        assert_eq!(m.size, 3);
        assert_eq!(brute_force_max(&e4, 2), 3);
        assert!(m.witness.is_intersecting());

        let p4 = Graph::path_power(4, 1).unwrap();
        assert_eq!(max_intersecting(&p4, 2, &limits()).unwrap().size, 2);
        assert_eq!(brute_force_max(&p4, 2), 2);

        for g in [e4, p4, Graph::complete(3).unwrap()] {
            assert_eq!(max_intersecting(&g, 1, &limits()).unwrap().size, 1);
        }
        let p5 = Graph::path_power(5, 1).unwrap();
        assert_eq!(brute_force_max(&p5, 2), 3);
        assert_eq!(max_intersecting(&p5, 2, &limits()).unwrap().size, 3);
    }

    #[test]
    fn maximum_family_listing() {
        let e4 = Graph::empty(4).unwrap();
        let all = enumerate_maximum_families(&e4, 2, &limits()).unwrap();
        assert!(all.complete);
        assert!(all.families.contains(&star(&e4, 1, 2).unwrap()));
        assert!(all.families.contains(&star(&e4, 4, 2).unwrap()));
        assert!(all.families.contains(&fam(2, &[&[1, 2], &[1, 3], &[2, 3]])));
        // Four stars and four triangles.
        assert_eq!(all.families.len(), 8);

        let c6 = Graph::cycle_power(6, 1).unwrap();
        let all = enumerate_maximum_families(&c6, 2, &limits()).unwrap();
        assert!(all.families.contains(&fam(2, &[&[1, 3], &[3, 5], &[1, 5]])));

        let p5 = Graph::path_power(5, 1).unwrap();
        let all = enumerate_maximum_families(&p5, 3, &limits()).unwrap();
        assert_eq!(all.families, vec![fam(3, &[&[1, 3, 5]])]);
    }

    #[test]
    fn verdict_examples() {
        let e5 = Graph::empty(5).unwrap();
        let rep = ekr_verdict(&e5, 2, &limits()).unwrap();
        assert!(rep.is_ekr);
        assert_eq!(rep.strictness, Strictness::Strict);
        assert_eq!(rep.non_star_witness, None);

        let e4 = Graph::empty(4).unwrap();
        let rep = ekr_verdict(&e4, 2, &limits()).unwrap();
        assert!(rep.is_ekr);
        assert_eq!(rep.strictness, Strictness::NotStrict);
        let w = rep.non_star_witness.unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.is_intersecting() && !w.is_star_like());

        let k2 = Graph::complete(2).unwrap();
        let m = Graph::disjoint_union(&[k2.clone(), k2.clone(), k2]).unwrap();
        let rep = ekr_verdict(&m, 3, &limits()).unwrap();
        assert!(rep.is_ekr);
        assert_eq!(rep.strictness, Strictness::NotStrict);
        let w = rep.non_star_witness.unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.is_intersecting() && !w.is_star_like());
    }

    #[test]
    fn vacuous_and_budget() {
        let p4 = Graph::path_power(4, 1).unwrap();
        let rep = ekr_verdict(&p4, 3, &limits()).unwrap();
        assert!(rep.is_ekr);
        assert_eq!(rep.strictness, Strictness::Vacuous);
        assert_eq!(rep.max_intersecting_size, 0);

        let e9 = Graph::empty(9).unwrap();
        let tight = Limits {
            node_budget: 10,
            ..Limits::default()
        };
        assert_eq!(
            max_intersecting(&e9, 4, &tight).unwrap_err(),
            SolverError::BudgetExhausted { budget: 10 }
        );
        let few = Limits {
            max_sets: 10,
            ..Limits::default()
        };
        assert_eq!(
            max_intersecting(&e9, 4, &few).unwrap_err(),
            SolverError::TooManySets { cap: 10 }
        );
    }

    #[test]
    fn family_cap_degrades_strictness() {
        // E_8 with r = 4 has 2^35 maximum families; stop after a handful.
        let e6 = Graph::empty(6).unwrap();
        let capped = Limits {
            family_cap: 2,
            ..Limits::default()
        };
        let all = enumerate_maximum_families(&e6, 3, &capped).unwrap();
        assert!(!all.complete);
        assert_eq!(all.families.len(), 2);
    }
}
