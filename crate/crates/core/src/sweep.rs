//! Exhaustive sweeps over the graph classes covered by the EKR theorems.
//!
//! A sweep enumerates every parameter point of a class that satisfies the
//! class hypothesis, runs [`ekr_verdict`] on it and compares the outcome with
//! what the theorem asserts. Strictness is only compared where a strictness
//! statement exists.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exec::{Executor, Sequential};
use crate::families::Family;
use crate::solver::{ekr_verdict_with, EkrReport, Limits, SolverError, Strictness};
use crate::spec::GraphSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremClass {
    Empty,
    CompleteUnion,
    CyclePower,
    PathPower,
    Mixed,
}

impl TheoremClass {
    pub const ALL: [TheoremClass; 5] = [
        TheoremClass::Empty,
        TheoremClass::CompleteUnion,
        TheoremClass::CyclePower,
        TheoremClass::PathPower,
        TheoremClass::Mixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremClass::Empty => "empty",
            TheoremClass::CompleteUnion => "complete-union",
            TheoremClass::CyclePower => "cycle-power",
            TheoremClass::PathPower => "path-power",
            TheoremClass::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

/// Parameter ranges. `r` restricts the sweep to one arity; the mixed class
/// defaults to `r = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    pub n_max: usize,
    pub k_max: usize,
    pub r: Option<usize>,
}

impl SweepBounds {
    pub fn new(n_max: usize, k_max: usize) -> Self {
        SweepBounds {
            n_max,
            k_max,
            r: None,
        }
    }
}

/// Mixed-class palette; every union takes at least one isolated vertex.
pub fn mixed_palette() -> [GraphSpec; 8] {
    [
        GraphSpec::Complete(1),
        GraphSpec::Complete(2),
        GraphSpec::Complete(3),
        GraphSpec::Path(2, 1),
        GraphSpec::Path(3, 1),
        GraphSpec::Path(4, 1),
        GraphSpec::Cycle(3, 1),
        GraphSpec::Cycle(4, 1),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    pub spec: GraphSpec,
    pub r: usize,
    /// Asserted strictness, when the class states one for this point.
    pub strict_claim: Option<bool>,
    /// Path powers: the largest star sits at an end vertex.
    pub end_star_claim: bool,
}

fn point(spec: GraphSpec, r: usize) -> SweepPoint {
    SweepPoint {
        spec,
        r,
        strict_claim: None,
        end_star_claim: false,
    }
}

fn arities(bounds: &SweepBounds, max: usize) -> impl Iterator<Item = usize> {
    let (lo, hi) = match bounds.r {
        Some(r) => (r, r.min(max)),
        None => (1, max),
    };
    lo..=hi
}

/// Non-increasing sequences of parts from `0..palette_len` whose sizes sum to at most `budget`.
fn multisets(
    sizes: &[usize],
    max_index: usize,
    budget: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if !current.is_empty() {
        out.push(current.clone());
    }
    for i in 0..=max_index.min(sizes.len() - 1) {
        if sizes[i] <= budget {
            current.push(i);
            multisets(sizes, i, budget - sizes[i], current, out);
            current.pop();
        }
    }
}

/// Independence number of the graphs built by this module.
fn alpha(spec: &GraphSpec) -> usize {
    match spec {
        GraphSpec::Empty(n) => *n,
        GraphSpec::Complete(_) => 1,
        GraphSpec::Path(n, k) => n.div_ceil(k + 1),
        GraphSpec::Cycle(n, k) => {
            if *k >= n / 2 {
                1
            } else {
                n / (k + 1)
            }
        }
        GraphSpec::Union(parts) => parts.iter().map(alpha).sum(),
        GraphSpec::Edges { order, .. } => *order,
    }
}

/// Every in-hypothesis point of `class` within `bounds`, in a fixed order.
pub fn sweep_points(class: TheoremClass, bounds: &SweepBounds) -> Vec<SweepPoint> {
    let mut points = Vec::new();
    match class {
        TheoremClass::Empty => {
            for n in 1..=bounds.n_max {
                for r in arities(bounds, n / 2) {
                    let mut p = point(GraphSpec::Empty(n), r);
                    if n > 2 * r {
                        p.strict_claim = Some(true);
                    }
                    points.push(p);
                }
            }
        }
        TheoremClass::CompleteUnion => {
            let sizes: Vec<usize> = (2..=bounds.n_max).collect();
            let mut unions = Vec::new();
            if !sizes.is_empty() {
                multisets(&sizes, sizes.len() - 1, bounds.n_max, &mut vec![], &mut unions);
            }
            unions.sort_by_key(|u| (u.iter().map(|&i| sizes[i]).sum::<usize>(), u.len()));
            for u in unions {
                let parts = u.len();
                let uniform = u.iter().all(|&i| i == u[0]);
                let t = sizes[u[0]];
                let spec = match u.as_slice() {
                    [only] => GraphSpec::Complete(sizes[*only]),
                    _ => GraphSpec::union(u.iter().rev().map(|&i| GraphSpec::Complete(sizes[i]))),
                };
                for r in arities(bounds, parts) {
                    let mut p = point(spec.clone(), r);
                    if uniform && !(t == 2 && parts == r) {
                        p.strict_claim = Some(true);
                    }
                    points.push(p);
                }
            }
        }
        TheoremClass::CyclePower | TheoremClass::PathPower => {
            let cycle = class == TheoremClass::CyclePower;
            for n in 1..=bounds.n_max {
                for k in 1..=bounds.k_max.min(n) {
                    let spec = if cycle {
                        GraphSpec::Cycle(n, k)
                    } else {
                        GraphSpec::Path(n, k)
                    };
                    for r in arities(bounds, alpha(&spec)) {
                        let mut p = point(spec.clone(), r);
                        if cycle && !(n == 2 * r + 2 && k == 1) {
                            p.strict_claim = Some(true);
                        }
                        p.end_star_claim = !cycle;
                        points.push(p);
                    }
                }
            }
        }
        TheoremClass::Mixed => {
            let r = bounds.r.unwrap_or(2);
            let palette = mixed_palette();
            let sizes: Vec<usize> = palette.iter().map(GraphSpec::order).collect();
            let mut unions = Vec::new();
            multisets(&sizes, sizes.len() - 1, bounds.n_max, &mut vec![], &mut unions);
            unions.retain(|u| u.len() >= 2 * r && u.contains(&0));
            unions.sort_by_key(|u| (u.iter().map(|&i| sizes[i]).sum::<usize>(), u.len()));
            for u in unions {
                let spec = GraphSpec::union(u.iter().rev().map(|&i| palette[i].clone()));
                points.push(point(spec, r));
            }
        }
    }
    points
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotEkr { larger: Family },
    StrictnessMismatch { claimed: bool, observed: Strictness },
    EndStarMissing { argmax: Vec<usize> },
}

impl Violation {
    pub fn describe(&self) -> String {
        match self {
            Violation::NotEkr { larger } => {
                format!("intersecting family of size {} beats every star", larger.len())
            }
            Violation::StrictnessMismatch { claimed, observed } => format!(
                "strictness claimed {} but observed {}",
                if *claimed { "strict" } else { "not-strict" },
                observed.as_str()
            ),
            Violation::EndStarMissing { argmax } => {
                format!("largest stars at {argmax:?} miss an end vertex")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOutcome {
    Checked {
        report: EkrReport,
        violations: Vec<Violation>,
    },
    Skipped(SolverError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub point: SweepPoint,
    pub outcome: RowOutcome,
}

impl SweepRow {
    pub fn report(&self) -> Option<&EkrReport> {
        match &self.outcome {
            RowOutcome::Checked { report, .. } => Some(report),
            RowOutcome::Skipped(_) => None,
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match &self.outcome {
            RowOutcome::Checked { violations, .. } => violations,
            RowOutcome::Skipped(_) => &[],
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, RowOutcome::Skipped(_))
    }
}

/// Compares a verdict with the claims attached to its point.
pub fn check_claims(point: &SweepPoint, report: &EkrReport) -> Vec<Violation> {
    let mut violations = Vec::new();
    if !report.is_ekr {
        violations.push(Violation::NotEkr {
            larger: report.witness.clone(),
        });
    }
    if let Some(claimed) = point.strict_claim {
        let observed = report.strictness;
        let agrees = match observed {
            Strictness::Strict => claimed,
            Strictness::NotStrict => !claimed,
            // Nothing to compare against.
            Strictness::Vacuous | Strictness::UnknownCapHit => true,
        };
        if !agrees {
            violations.push(Violation::StrictnessMismatch { claimed, observed });
        }
    }
    if point.end_star_claim && report.max_intersecting_size > 0 {
        let n = point.spec.order();
        let argmax = &report.star_argmax;
        if !(argmax.contains(&1) && argmax.contains(&n)) {
            violations.push(Violation::EndStarMissing {
                argmax: argmax.clone(),
            });
        }
    }
    violations
}

/// The row for one point. Resource caps mark the row skipped.
pub fn evaluate_point<X: Executor>(point: &SweepPoint, limits: &Limits, exec: &X) -> SweepRow {
    let graph = point
        .spec
        .build()
        .expect("sweep points are built from valid parameters");
    let outcome = match ekr_verdict_with(&graph, point.r, limits, exec) {
        Ok(report) => {
            let violations = check_claims(point, &report);
            RowOutcome::Checked { report, violations }
        }
        Err(e) => RowOutcome::Skipped(e),
    };
    SweepRow {
        point: point.clone(),
        outcome,
    }
}

pub fn theorem_sweep(class: TheoremClass, bounds: &SweepBounds, limits: &Limits) -> Vec<SweepRow> {
    theorem_sweep_with(class, bounds, limits, &Sequential)
}

/// Points run one after another; each search parallelises internally.
pub fn theorem_sweep_with<X: Executor>(
    class: TheoremClass,
    bounds: &SweepBounds,
    limits: &Limits,
    exec: &X,
) -> Vec<SweepRow> {
    sweep_points(class, bounds)
        .iter()
        .map(|p| evaluate_point(p, limits, exec))
        .collect()
}
