//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use ekrlab::exec::Pool;
use ekrlab::json;
use ekrlab::suites::{self, standard_bounds};
use ekrlab::table::TimedRow;
use ekrlab_core::families::enumerate_independent;
use ekrlab_core::sweep::{TheoremClass, Violation};
use ekrlab_core::{star_components, EdgeRef, GraphSpec, Limits, Strictness, VertexSet};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome {
            passed: true,
            detail: summary,
        }
    } else {
        let shown: Vec<&String> = problems.iter().take(5).collect();
        Outcome {
            passed: false,
            detail: format!("{summary}; {} problem(s): {shown:?}", problems.len()),
        }
    }
}

fn sweep(class: TheoremClass, exec: &Pool) -> Vec<TimedRow> {
    suites::run_sweep(class, &standard_bounds(class), &Limits::default(), exec)
}

fn spec_of(t: &TimedRow) -> String {
    format!("{} r={}", t.row.point.spec, t.row.point.r)
}

/// Every row checked and r-EKR, with no violated claim.
fn sweep_problems(rows: &[TimedRow]) -> Vec<String> {
    let mut out = Vec::new();
    for t in rows {
        match t.row.report() {
            None => out.push(format!("{} skipped", spec_of(t))),
            Some(rep) if !rep.is_ekr => out.push(format!("{} not EKR", spec_of(t))),
            Some(_) => {}
        }
        for v in t.row.violations() {
            out.push(format!("{}: {}", spec_of(t), v.describe()));
        }
    }
    out
}

fn find<'a>(rows: &'a [TimedRow], spec: &GraphSpec, r: usize) -> Option<&'a TimedRow> {
    rows.iter().find(|t| &t.row.point.spec == spec && t.row.point.r == r)
}

fn set(labels: &[usize]) -> VertexSet {
    VertexSet::try_from_labels(labels.iter().copied()).unwrap()
}

fn criterion_1(rows: &[TimedRow]) -> Outcome {
    let mut problems = sweep_problems(rows);
    for t in rows {
        let (n, r) = (t.row.point.spec.order(), t.row.point.r);
        let Some(rep) = t.row.report() else { continue };
        let strict = rep.strictness == Strictness::Strict;
        if strict != (n > 2 * r) {
            problems.push(format!("E_{n} r={r}: strictness {}", rep.strictness.as_str()));
        }
    }
    outcome(problems, format!("{} points", rows.len()))
}

fn criterion_2(rows: &[TimedRow]) -> Outcome {
    let mut problems = sweep_problems(rows);
    for t in rows {
        let GraphSpec::Union(parts) = &t.row.point.spec else { continue };
        if parts.len() < t.row.point.r || parts.iter().any(|p| p.order() < 2) {
            problems.push(format!("{} outside the hypothesis", spec_of(t)));
        }
    }
    let k2_3 = GraphSpec::union(vec![GraphSpec::Complete(2); 3]);
    match find(rows, &k2_3, 3).and_then(|t| t.row.report()) {
        Some(rep) => {
            let ok = rep.strictness == Strictness::NotStrict
                && rep
                    .non_star_witness
                    .as_ref()
                    .is_some_and(|w| w.len() == 4 && w.is_intersecting() && !w.is_star_like());
            if !ok {
                problems.push(format!("K2+K2+K2 r=3: {:?}", rep.strictness));
            }
        }
        None => problems.push("K2+K2+K2 r=3 missing".into()),
    }
    outcome(problems, format!("{} points", rows.len()))
}

fn criterion_3(rows: &[TimedRow]) -> Outcome {
    let mut problems = sweep_problems(rows);
    match find(rows, &GraphSpec::Cycle(6, 1), 2).and_then(|t| t.row.report()) {
        Some(rep) => {
            let triangle =
                ekrlab_core::Family::new(2, [set(&[1, 3]), set(&[3, 5]), set(&[1, 5])]).unwrap();
            let witness_ok = rep
                .non_star_witness
                .as_ref()
                .is_some_and(|w| w.len() == 3 && w.is_intersecting() && !w.is_star_like());
            let triangle_max = triangle.is_intersecting()
                && !triangle.is_star_like()
                && triangle.len() == rep.max_intersecting_size;
            if rep.strictness != Strictness::NotStrict || !witness_ok || !triangle_max {
                problems.push(format!("C_6 r=2: {:?}", rep.strictness));
            }
        }
        None => problems.push("C_6 r=2 missing".into()),
    }
    outcome(problems, format!("{} points", rows.len()))
}

fn criterion_4(rows: &[TimedRow]) -> Outcome {
    let mut problems = sweep_problems(rows);
    for t in rows {
        let Some(rep) = t.row.report() else { continue };
        let n = t.row.point.spec.order();
        if rep.max_intersecting_size > 0
            && !(rep.star_argmax.contains(&1) && rep.star_argmax.contains(&n))
        {
            problems.push(format!("{}: argmax {:?}", spec_of(t), rep.star_argmax));
        }
        if t.row.violations().iter().any(|v| matches!(v, Violation::EndStarMissing { .. })) {
            problems.push(format!("{}: end star claim", spec_of(t)));
        }
    }
    outcome(problems, format!("{} points", rows.len()))
}

fn criterion_5(rows: &[TimedRow]) -> Outcome {
    let mut problems = sweep_problems(rows);
    for t in rows {
        let GraphSpec::Union(parts) = &t.row.point.spec else {
            problems.push(format!("{} is not a union", spec_of(t)));
            continue;
        };
        if t.row.point.r != 2
            || parts.len() < 4
            || !parts.contains(&GraphSpec::Complete(1))
            || t.row.point.spec.order() > 12
        {
            problems.push(format!("{} outside the hypothesis", spec_of(t)));
        }
    }
    outcome(problems, format!("{} points", rows.len()))
}

fn criterion_6(s: &suites::LemmaSuiteJson) -> Outcome {
    let mut problems = Vec::new();
    if s.count != 1000 || s.instances.len() != 1000 {
        problems.push(format!("{} instances", s.instances.len()));
    }
    for p in [0.2, 0.5, 0.8] {
        if !s.instances.iter().any(|i| i.p == p) {
            problems.push(format!("no instance with p = {p}"));
        }
    }
    for i in &s.instances {
        for f in &i.failures {
            problems.push(format!("instance {} edge {:?}: {:?}", i.index, f.edge, f.problems));
        }
    }
    outcome(
        problems,
        format!("{} instances, {} decompositions", s.instances.len(), s.decompositions),
    )
}

/// Independent sets of the path `1..=n` (as bitmasks) of size `r` containing `x`.
fn path_star_count(n: usize, x: usize, r: usize) -> usize {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r && m >> (x - 1) & 1 == 1 && m & (m >> 1) == 0)
        .count()
}

fn criterion_7(s: &suites::StarSuiteJson) -> Outcome {
    let mut problems = Vec::new();
    for g in &s.graphs {
        for f in &g.failures {
            problems.push(format!("{} e={:?} x={} r={}: {}", g.graph, f.edge, f.x, f.r, f.problem));
        }
    }
    if !s.graphs.iter().any(|g| g.graph == "path:7:1") {
        problems.push("path:7:1 not covered".into());
    }
    // P_7, e = (6,7), x = 1: G/e is P_6 and G↓e is P_4. By direct count,
    // D_x is empty and E_x holds the sets through 1, 5 and 7.
    let g = GraphSpec::Path(7, 1).build().unwrap();
    for (r, expected) in [(2, [5, 4, 1, 0, 0]), (3, [6, 3, 2, 0, 1])] {
        let e_x = (0u32..1 << 7)
            .filter(|m| m.count_ones() == r && m & 1 == 1 && m >> 4 & 1 == 1 && m >> 6 & 1 == 1 && m & (m >> 1) == 0)
            .count();
        let counted = [
            path_star_count(7, 1, r as usize),
            path_star_count(6, 1, r as usize),
            path_star_count(4, 1, r as usize - 1),
            0,
            e_x,
        ];
        if counted != expected {
            problems.push(format!("oracle recount for r={r} gives {counted:?}"));
        }
        match star_components(&g, EdgeRef::new(6, 7), 1, r as usize) {
            Ok(sc) => {
                let got = [
                    sc.lhs(),
                    sc.contracted_star.len(),
                    sc.down_star.len(),
                    sc.d_x.len(),
                    sc.e_x.len(),
                ];
                if got != expected || !sc.identity_holds() {
                    problems.push(format!("P_7 r={r}: {got:?}"));
                }
            }
            Err(e) => problems.push(format!("P_7 r={r}: {e}")),
        }
    }
    outcome(
        problems,
        format!(
            "{} graphs, {} identities, {} isolated-star checks",
            s.graphs.len(),
            s.identities,
            s.isolated_checks
        ),
    )
}

/// Largest pairwise-intersecting subfamily by extending cliques in index order.
fn clique_oracle(sets: &[VertexSet]) -> usize {
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

fn criterion_8(s: &suites::OracleSuiteJson, cases: &[(GraphSpec, usize)]) -> Outcome {
    let mut problems = Vec::new();
    for (rec, (spec, r)) in s.records.iter().zip(cases) {
        let g = spec.build().unwrap();
        let all = enumerate_independent(&g, *r);
        let here = clique_oracle(all.sets());
        if rec.solver != Some(rec.oracle) || rec.oracle != here || rec.sets > 18 {
            problems.push(format!(
                "{} r={}: solver {:?}, subset search {}, clique oracle {here}",
                rec.graph, rec.r, rec.solver, rec.oracle
            ));
        }
    }
    if s.records.len() != cases.len() {
        problems.push("record count mismatch".into());
    }
    outcome(problems, format!("{} cases", s.cases))
}

fn criterion_9(s: &suites::PathSuiteJson) -> Outcome {
    let mut problems: Vec<String> = s.errors.clone();
    for c in &s.records {
        for check in c.checks.iter().filter(|c| !c.passed) {
            problems.push(format!("n={} k={} r={}: {}", c.n, c.k, c.r, check.name));
        }
        if !c.checks.iter().any(|ch| ch.name == "splice") {
            problems.push(format!("n={} k={} r={}: no splice check", c.n, c.k, c.r));
        }
    }
    let expected = suites::path_cases(12, 3).len();
    if s.certificates != expected {
        problems.push(format!("{} of {expected} certificates", s.certificates));
    }
    outcome(problems, format!("{} certificates", s.certificates))
}

/// JSON certificates of suites 1-9.
fn certificates(
    sweeps: &[(TheoremClass, Vec<TimedRow>)],
    lemma: &suites::LemmaSuiteJson,
    star: &suites::StarSuiteJson,
    oracle: &suites::OracleSuiteJson,
    path: &suites::PathSuiteJson,
) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = sweeps
        .iter()
        .map(|(class, rows)| {
            (
                class.as_str().to_string(),
                json::to_string(&suites::sweep_json(*class, &standard_bounds(*class), rows)),
            )
        })
        .collect();
    out.push(("lemma".into(), json::to_string(lemma)));
    out.push(("star".into(), json::to_string(star)));
    out.push(("oracle".into(), json::to_string(oracle)));
    out.push(("path".into(), json::to_string(path)));
    out
}

struct Run {
    sweeps: Vec<(TheoremClass, Vec<TimedRow>)>,
    sweep_times: Vec<Duration>,
    lemma: (suites::LemmaSuiteJson, Duration),
    star: (suites::StarSuiteJson, Duration),
    oracle: (suites::OracleSuiteJson, Duration),
    path: (suites::PathSuiteJson, Duration),
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn run_all(workers: usize, cases: &[(GraphSpec, usize)]) -> Run {
    let exec = Pool::new(workers).unwrap();
    let mut sweeps = Vec::new();
    let mut sweep_times = Vec::new();
    for class in TheoremClass::ALL {
        let (rows, t) = timed(|| sweep(class, &exec));
        sweeps.push((class, rows));
        sweep_times.push(t);
    }
    Run {
        sweeps,
        sweep_times,
        lemma: timed(|| suites::lemma_suite(0, 1000, &exec)),
        star: timed(|| suites::star_suite(&suites::sweep_graphs(10), 4, &exec)),
        oracle: timed(|| suites::oracle_suite(cases, 18, &Limits::default(), &exec)),
        path: timed(|| suites::path_suite(12, 3, &exec)),
    }
}

fn within(o: Outcome, elapsed: Duration, limit_s: u64) -> Outcome {
    let detail = format!("{}, {:.1} s", o.detail, elapsed.as_secs_f64());
    if elapsed > Duration::from_secs(limit_s) {
        Outcome {
            passed: false,
            detail: format!("{detail} exceeds {limit_s} s"),
        }
    } else {
        Outcome { detail, ..o }
    }
}

fn main() {
    let cases = suites::oracle_cases(0, 1000, 18);
    let first = run_all(1, &cases);
    let rows = |i: usize| &first.sweeps[i].1;
    let mut results: Vec<(&str, Outcome)> = vec![
        ("empty graphs", within(criterion_1(rows(0)), first.sweep_times[0], 300)),
        ("unions of complete graphs", within(criterion_2(rows(1)), first.sweep_times[1], 300)),
        ("cycle powers", within(criterion_3(rows(2)), first.sweep_times[2], 300)),
        ("path powers", within(criterion_4(rows(3)), first.sweep_times[3], 300)),
        ("mixed unions", within(criterion_5(rows(4)), first.sweep_times[4], 600)),
        ("edge compression suite", within(criterion_6(&first.lemma.0), first.lemma.1, 300)),
        ("star identity suite", within(criterion_7(&first.star.0), first.star.1, 300)),
        ("oracle equivalence", within(criterion_8(&first.oracle.0, &cases), first.oracle.1, 300)),
        ("path certificates", within(criterion_9(&first.path.0), first.path.1, 300)),
    ];

    let second = run_all(4, &cases);
    let a = certificates(&first.sweeps, &first.lemma.0, &first.star.0, &first.oracle.0, &first.path.0);
    let b = certificates(&second.sweeps, &second.lemma.0, &second.star.0, &second.oracle.0, &second.path.0);
    let differing: Vec<String> = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.1 != y.1)
        .map(|(x, _)| x.0.clone())
        .collect();
    let bytes: usize = a.iter().map(|(_, s)| s.len()).sum();
    results.push((
        "determinism across 1 and 4 workers",
        outcome(differing, format!("{} certificates, {bytes} bytes each run", a.len())),
    ));

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {:<36} {}  {}",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
