//! Independent `r`-sets, stars and intersecting families.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::graph::{Graph, GraphError, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("set {set} has {found} members, expected {expected}")]
    ArityMismatch {
        set: VertexSet,
        expected: usize,
        found: usize,
    },
    #[error("duplicate set {0}")]
    Duplicate(VertexSet),
    #[error("sets are not in lexicographic order at {0}")]
    Unsorted(VertexSet),
    #[error("set members must be strictly increasing labels in 1..=64")]
    BadMembers,
    #[error("set {set} is not independent: {a} and {b} are adjacent")]
    NotIndependent { set: VertexSet, a: Vertex, b: Vertex },
    #[error("sets {0} and {1} are disjoint")]
    NotIntersecting(VertexSet, VertexSet),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A duplicate-free collection of `arity`-sets in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    arity: usize,
    sets: Vec<VertexSet>,
}

impl Family {
    pub fn empty(arity: usize) -> Self {
        Family {
            arity,
            sets: Vec::new(),
        }
    }

    /// Sorts and deduplicates `sets`; every set must have `arity` members.
    pub fn new(arity: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self, FamilyError> {
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        for &s in &sets {
            check_arity(s, arity)?;
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(Family { arity, sets })
    }

    /// Accepts only input that is already canonical: right arity, strictly
    /// increasing, no duplicates.
    pub fn from_canonical(
        arity: usize,
        sets: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, FamilyError> {
        let sets: Vec<VertexSet> = sets.into_iter().collect();
        for (i, &s) in sets.iter().enumerate() {
            check_arity(s, arity)?;
            if i > 0 {
                match sets[i - 1].cmp(&s) {
                    core::cmp::Ordering::Equal => return Err(FamilyError::Duplicate(s)),
                    core::cmp::Ordering::Greater => return Err(FamilyError::Unsorted(s)),
                    core::cmp::Ordering::Less => {}
                }
            }
        }
        Ok(Family { arity, sets })
    }

    /// Builds one set from labels that must be strictly increasing.
    pub fn set_from_sorted(labels: &[Vertex]) -> Result<VertexSet, FamilyError> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FamilyError::BadMembers);
        }
        VertexSet::try_from_labels(labels.iter().copied()).ok_or(FamilyError::BadMembers)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexSet> + Clone + '_ {
        self.sets.iter().copied()
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    /// First disjoint pair in canonical order, if any.
    pub fn disjoint_pair(&self) -> Option<(VertexSet, VertexSet)> {
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[i + 1..] {
                if !a.intersects(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Every two members meet. Empty and one-member families qualify.
    pub fn is_intersecting(&self) -> bool {
        self.disjoint_pair().is_none()
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn common_intersection(&self) -> Option<VertexSet> {
        let mut it = self.iter();
        let first = it.next()?;
        Some(it.fold(first, VertexSet::intersection))
    }

    /// Contained in some star: a common vertex lies in every member.
    pub fn is_star_like(&self) -> bool {
        self.common_intersection().is_some_and(|c| !c.is_empty())
    }

    /// Members containing `v`.
    pub fn containing(&self, v: Vertex) -> Family {
        self.filter(|s| s.contains(v))
    }

    pub fn filter(&self, mut keep: impl FnMut(VertexSet) -> bool) -> Family {
        Family {
            arity: self.arity,
            sets: self.iter().filter(|&s| keep(s)).collect(),
        }
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &Family) -> Family {
        self.filter(|s| !other.contains(s))
    }

    /// Checks every member is an independent set of `g`.
    pub fn check_independent_in(&self, g: &Graph) -> Result<(), FamilyError> {
        for s in self.iter() {
            independence_witness(g, s)?.map_or(Ok(()), |(a, b)| {
                Err(FamilyError::NotIndependent { set: s, a, b })
            })?;
        }
        Ok(())
    }
}

fn check_arity(set: VertexSet, arity: usize) -> Result<(), FamilyError> {
    if set.len() != arity {
        return Err(FamilyError::ArityMismatch {
            set,
            expected: arity,
            found: set.len(),
        });
    }
    Ok(())
}

fn check_in_range(g: &Graph, s: VertexSet) -> Result<(), GraphError> {
    match s.max() {
        Some(m) if m > g.order() => Err(GraphError::VertexOutOfRange {
            vertex: m,
            order: g.order(),
        }),
        _ => Ok(()),
    }
}

/// An adjacent pair inside `s`, if there is one.
fn independence_witness(g: &Graph, s: VertexSet) -> Result<Option<(Vertex, Vertex)>, GraphError> {
    check_in_range(g, s)?;
    for a in s.iter() {
        if let Some(b) = g.row(a).intersection(s).min() {
            return Ok(Some((a.min(b), a.max(b))));
        }
    }
    Ok(None)
}

pub fn is_independent(g: &Graph, s: VertexSet) -> Result<bool, GraphError> {
    Ok(independence_witness(g, s)?.is_none())
}

/// Visits the independent `r`-sets of `g` in lexicographic order.
///
/// Depth-first: each step extends by a non-neighbour larger than the last
/// chosen vertex. `r = 0` visits the empty set once.
pub fn for_each_independent<B>(
    g: &Graph,
    r: usize,
    mut visit: impl FnMut(VertexSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn extend<B>(
        g: &Graph,
        r: usize,
        chosen: VertexSet,
        allowed: VertexSet,
        visit: &mut impl FnMut(VertexSet) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if chosen.len() == r {
            return visit(chosen);
        }
        let need = r - chosen.len();
        if allowed.len() < need {
            return ControlFlow::Continue(());
        }
        let mut rest = allowed;
        while let Some(v) = rest.min() {
            rest = rest.without(v);
            if rest.len() + 1 < need {
                break;
            }
            extend(g, r, chosen.with(v), rest.difference(g.row(v)), visit)?;
        }
        ControlFlow::Continue(())
    }
    extend(g, r, VertexSet::EMPTY, g.vertices(), &mut visit)
}

/// `I^(r)(G)`.
pub fn enumerate_independent(g: &Graph, r: usize) -> Family {
    let mut sets = Vec::new();
    let _ = for_each_independent::<()>(g, r, |s| {
        sets.push(s);
        ControlFlow::Continue(())
    });
    Family { arity: r, sets }
}

/// `|I^(r)(G)|` without storing the sets.
pub fn count_independent(g: &Graph, r: usize) -> usize {
    let mut n = 0usize;
    let _ = for_each_independent::<()>(g, r, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// `I_v^(r)(G)`: independent `r`-sets containing `v`.
pub fn star(g: &Graph, v: Vertex, r: usize) -> Result<Family, GraphError> {
    g.check_vertex(v)?;
    if r == 0 {
        return Ok(Family::empty(0));
    }
    // Independent (r-1)-sets of G - N[v], each with v added.
    let (rest, map) = g.induced(g.vertices().difference(g.row(v)).without(v));
    let mut sets: Vec<VertexSet> = enumerate_independent(&rest, r - 1)
        .iter()
        .map(|s| map.pull_back(s).with(v))
        .collect();
    sets.sort_unstable();
    Ok(Family { arity: r, sets })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxStar {
    pub size: usize,
    /// Every vertex whose star attains `size`; empty when `size == 0`.
    pub argmax: Vec<Vertex>,
}

/// Largest star size with all maximisers.
pub fn max_star(g: &Graph, r: usize) -> MaxStar {
    let mut counts = alloc::vec![0usize; g.order()];
    let _ = for_each_independent::<()>(g, r, |s| {
        for v in s.iter() {
            counts[v - 1] += 1;
        }
        ControlFlow::Continue(())
    });
    let size = counts.iter().copied().max().unwrap_or(0);
    let argmax = if size == 0 {
        Vec::new()
    } else {
        (1..=g.order()).filter(|v| counts[v - 1] == size).collect()
    };
    MaxStar { size, argmax }
}
