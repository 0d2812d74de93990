//! Command-line front end.
//!
//! Exit codes: 0 verified, 1 violation or failed check, 2 usage or input
//! error, 3 a resource cap left the answer undetermined.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ekrlab_core::families::for_each_independent;
use ekrlab_core::sweep::{TheoremClass, Violation};
use ekrlab_core::{
    decompose, ekr_verdict_with, parse_graph_spec, star_components, verify_partition_lemma,
    Decomposition, EdgeRef, Family, Graph, Limits, PartitionReport, Strictness, MAX_ORDER,
};
use serde::Serialize;

use crate::exec::Pool;
use crate::json::{
    self, CounterexampleJson, DecompositionJson, EkrReportJson, FamilyJson, StarComponentsJson,
};
use crate::suites;
use crate::table::{self, TimedRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Lowers the largest accepted graph order (at most 64).
pub const CAP_ENV: &str = "EKRLAB_CAP_N";

#[derive(Parser, Debug)]
#[command(name = "ekrlab", version, about = "Exact EKR verification for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemma,
    Star,
    Oracle,
    Path,
}

#[derive(Args, Debug)]
struct Common {
    /// Search nodes allowed per search phase.
    #[arg(long, default_value_t = 1_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: u64,
    /// Maximum families enumerated when deciding strictness.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    family_cap: u64,
    /// Largest number of independent r-sets a search accepts.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    max_sets: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    workers: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide r-EKR and strictness for one graph.
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        r: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Compress an intersecting family along an edge and check the result;
    /// with --x, split the star at x along the same edge.
    Decompose {
        #[arg(long)]
        graph: String,
        /// Edge as `v,w`; w is absorbed into v.
        #[arg(long)]
        edge: String,
        /// Family JSON, or a stored decomposition to re-verify.
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        r: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Check every in-hypothesis point of a theorem class.
    Sweep {
        /// empty, complete-union, cycle-power, path-power or mixed.
        #[arg(long)]
        class: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        r: Option<u64>,
        /// Where counterexample certificates are written.
        #[arg(long, default_value = "counterexample.json")]
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print I^(r)(G) as family JSON.
    Enumerate {
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=64))]
        r: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run one of the seeded property suites.
    PropertySuite {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random instances (lemma and oracle suites).
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// A failure that ends the command with a given exit code.
struct Exit {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn note(&mut self, message: &str) {
        let _ = writeln!(self.stderr, "{message}");
    }
}

fn order_cap() -> Result<usize, Exit> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(MAX_ORDER),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_ORDER).contains(&n) => Ok(n),
            _ => Err(usage(format!(
                "{CAP_ENV} must be an integer in 1..={MAX_ORDER}, got {v:?}"
            ))),
        },
    }
}

fn load_graph(text: &str) -> Result<Graph, Exit> {
    let spec = parse_graph_spec(text).map_err(|e| usage(format!("bad graph spec {text:?}: {e}")))?;
    let cap = order_cap()?;
    if spec.order() > cap {
        return Err(usage(format!(
            "graph order {} exceeds the order cap {cap}",
            spec.order()
        )));
    }
    spec.build().map_err(|e| usage(format!("bad graph {text:?}: {e}")))
}

fn limits(c: &Common) -> Limits {
    Limits {
        node_budget: c.node_budget,
        family_cap: c.family_cap,
        max_sets: usize::try_from(c.max_sets).unwrap_or(usize::MAX),
    }
}

fn pool(c: &Common) -> Result<Pool, Exit> {
    Pool::new(c.workers as usize).map_err(|e| usage(format!("cannot start workers: {e}")))
}

fn emit(io: &mut Io<'_>, out: &Option<PathBuf>, body: &str) -> Result<(), Exit> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => io
            .stdout
            .write_all(body.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn family_text(f: &Family) -> String {
    let sets: Vec<String> = f.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", sets.join(", "))
}

fn cmd_verify(io: &mut Io<'_>, graph: &str, r: usize, c: &Common) -> Result<i32, Exit> {
    let g = load_graph(graph)?;
    let exec = pool(c)?;
    let start = Instant::now();
    let report = ekr_verdict_with(&g, r, &limits(c), &exec).map_err(|e| Exit {
        code: EXIT_CAP,
        message: format!("verdict undetermined: {e}"),
    })?;
    let ms = start.elapsed().as_millis();
    let body = match c.format {
        Format::Json => json::to_string(&EkrReportJson::from(&report)),
        Format::Csv | Format::Text => {
            let point = ekrlab_core::sweep::SweepPoint {
                spec: report.graph.clone(),
                r,
                strict_claim: None,
                end_star_claim: false,
            };
            let row = TimedRow {
                row: ekrlab_core::sweep::SweepRow {
                    point,
                    outcome: ekrlab_core::sweep::RowOutcome::Checked {
                        report: report.clone(),
                        violations: Vec::new(),
                    },
                },
                ms,
            };
            if c.format == Format::Csv {
                table::csv(&[row])
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "graph: {}", report.graph);
                let _ = writeln!(s, "r: {r}");
                let _ = writeln!(
                    s,
                    "largest star: {} at {:?}",
                    report.max_star_size, report.star_argmax
                );
                let _ = writeln!(s, "largest intersecting family: {}", report.max_intersecting_size);
                let _ = writeln!(s, "r-EKR: {}", if report.is_ekr { "yes" } else { "no" });
                let _ = writeln!(s, "strictness: {}", report.strictness.as_str());
                if let Some(w) = &report.non_star_witness {
                    let _ = writeln!(s, "non-star maximum family: {}", family_text(w));
                }
                let _ = writeln!(
                    s,
                    "search: {} independent sets, {} nodes, {} maximum families visited, {ms} ms",
                    report.stats.independent_sets, report.stats.nodes, report.stats.max_families
                );
                s
            }
        }
    };
    emit(io, &c.out, &body)?;
    if report.strictness == Strictness::UnknownCapHit {
        io.note("note: strictness undetermined within the family cap and node budget");
    }
    Ok(if report.is_ekr { EXIT_OK } else { EXIT_VIOLATION })
}

fn parse_edge(g: &Graph, text: &str) -> Result<EdgeRef, Exit> {
    let bad = || usage(format!("--edge expects v,w, got {text:?}"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let v = a.trim().parse().map_err(|_| bad())?;
    let w = b.trim().parse().map_err(|_| bad())?;
    g.edge(v, w).map_err(|e| usage(format!("--edge {text}: {e}")))
}

/// A family file, or a stored decomposition or counterexample certificate.
enum Loaded {
    Family(Family),
    Decomposition(Box<Decomposition>),
}

fn load_family(path: &Path) -> Result<Loaded, Exit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    if let Ok(d) = serde_json::from_str::<DecompositionJson>(&text) {
        let d = d
            .to_decomposition()
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(Loaded::Decomposition(Box::new(d)));
    }
    if let Ok(cx) = serde_json::from_str::<CounterexampleJson>(&text) {
        let f = cx
            .family
            .to_family()
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(Loaded::Family(f));
    }
    json::parse_family(&text)
        .map(Loaded::Family)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct DecomposeOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star_components: Option<StarComponentsJson>,
}

fn decomposition_text(d: &Decomposition, report: &PartitionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph: {}  edge: {},{}", d.graph().spec(), d.edge().v(), d.edge().w());
    let _ = writeln!(s, "A: {}", family_text(d.family()));
    let _ = writeln!(s, "B: {}  (in {})", family_text(d.b()), d.contracted().spec());
    let _ = writeln!(s, "C: {}  (in {})", family_text(d.c()), d.down().spec());
    let _ = writeln!(s, "D: {}", family_text(d.d()));
    let _ = writeln!(s, "E: {}", family_text(d.e()));
    for c in &report.checks {
        let _ = writeln!(
            s,
            "({}) {}",
            c.property.label(),
            if c.passed { "pass" } else { "FAIL" }
        );
    }
    s
}

fn cmd_decompose(
    io: &mut Io<'_>,
    graph: &str,
    edge: &str,
    family: Option<&Path>,
    x: Option<usize>,
    r: Option<usize>,
    c: &Common,
) -> Result<i32, Exit> {
    if family.is_none() && x.is_none() {
        return Err(usage("decompose needs --family, --x, or both"));
    }
    let g = load_graph(graph)?;
    let e = parse_edge(&g, edge)?;
    let mut passed = true;
    let mut text = String::new();
    let mut out = DecomposeOutput {
        decomposition: None,
        star_components: None,
    };
    let mut arity = r;
    if let Some(path) = family {
        let d = match load_family(path)? {
            Loaded::Family(a) => {
                if r.is_some_and(|r| r != a.arity()) {
                    return Err(usage(format!(
                        "--r {} does not match the family arity {}",
                        r.unwrap_or_default(),
                        a.arity()
                    )));
                }
                decompose(&g, e, &a).map_err(|err| usage(format!("cannot decompose: {err}")))?
            }
            Loaded::Decomposition(d) => {
                if d.graph() != &g || d.edge() != e {
                    return Err(usage("stored decomposition is for a different graph or edge"));
                }
                *d
            }
        };
        let report = verify_partition_lemma(&d).map_err(|err| Exit {
            code: EXIT_VIOLATION,
            message: format!("decomposition rejected: {err}"),
        })?;
        passed &= report.all_passed();
        arity = arity.or(Some(d.arity()));
        text.push_str(&decomposition_text(&d, &report));
        out.decomposition = Some(DecompositionJson::new(&d, &report));
    }
    if let Some(x) = x {
        let r = arity.ok_or_else(|| usage("--x needs --r or a family"))?;
        let sc = star_components(&g, e, x, r).map_err(|err| usage(err.to_string()))?;
        let json = StarComponentsJson::new(&g.spec().to_string(), e, &sc);
        passed &= sc.identity_holds() && sc.structure_holds();
        let _ = writeln!(
            text,
            "star at {x}, r = {r}: |I_x(G)| = |I_x(G/e)| + |I_x(G↓e)| + |D_x| + |E_x|: {} ({})",
            json.identity_line(),
            if sc.identity_holds() && sc.structure_holds() { "holds" } else { "FAILS" }
        );
        out.star_components = Some(json);
    }
    let body = match c.format {
        Format::Json => json::to_string(&out),
        Format::Text => text,
        Format::Csv => return Err(usage("decompose supports text and json output")),
    };
    emit(io, &c.out, &body)?;
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
}

fn counterexamples(rows: &[TimedRow]) -> Vec<CounterexampleJson> {
    let mut out = Vec::new();
    for t in rows {
        let Some(report) = t.row.report() else { continue };
        for v in t.row.violations() {
            let family = match v {
                Violation::NotEkr { larger } => larger,
                _ => report.non_star_witness.as_ref().unwrap_or(&report.witness),
            };
            out.push(CounterexampleJson {
                graph: t.row.point.spec.to_string(),
                r: t.row.point.r,
                failing_check: v.describe(),
                family: family.into(),
                report: report.into(),
            });
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    io: &mut Io<'_>,
    class: &str,
    n_max: Option<usize>,
    k_max: Option<usize>,
    r: Option<usize>,
    certificate: &Path,
    c: &Common,
) -> Result<i32, Exit> {
    let class = TheoremClass::parse(class).ok_or_else(|| {
        usage(format!(
            "unknown class {class:?}; expected one of empty, complete-union, cycle-power, path-power, mixed"
        ))
    })?;
    let mut bounds = suites::standard_bounds(class);
    bounds.n_max = n_max.unwrap_or(bounds.n_max);
    bounds.k_max = k_max.unwrap_or(bounds.k_max);
    bounds.r = r.or(bounds.r);
    let cap = order_cap()?;
    if bounds.n_max > cap {
        return Err(usage(format!("--n-max {} exceeds the order cap {cap}", bounds.n_max)));
    }
    let exec = pool(c)?;
    let rows = suites::run_sweep(class, &bounds, &limits(c), &exec);
    let body = match c.format {
        Format::Text => table::text(&rows),
        Format::Csv => table::csv(&rows),
        Format::Json => json::to_string(&suites::sweep_json(class, &bounds, &rows)),
    };
    emit(io, &c.out, &body)?;
    let skipped = rows.iter().filter(|t| t.row.is_skipped()).count();
    let bad = counterexamples(&rows);
    io.note(&format!(
        "{} points, {} violations, {} skipped",
        rows.len(),
        bad.len(),
        skipped
    ));
    if !bad.is_empty() {
        for cx in &bad {
            io.note(&format!("violation at {} r={}: {}", cx.graph, cx.r, cx.failing_check));
        }
        std::fs::write(certificate, json::to_string(&bad))
            .map_err(|e| usage(format!("cannot write {}: {e}", certificate.display())))?;
        io.note(&format!("counterexample certificates written to {}", certificate.display()));
        return Ok(EXIT_VIOLATION);
    }
    Ok(if skipped > 0 { EXIT_CAP } else { EXIT_OK })
}

fn cmd_enumerate(io: &mut Io<'_>, graph: &str, r: usize, c: &Common) -> Result<i32, Exit> {
    let g = load_graph(graph)?;
    let cap = limits(c).max_sets;
    let mut sets = Vec::new();
    let over = for_each_independent(&g, r, |s| {
        if sets.len() == cap {
            return std::ops::ControlFlow::Break(());
        }
        sets.push(s);
        std::ops::ControlFlow::Continue(())
    });
    if over.is_break() {
        return Err(Exit {
            code: EXIT_CAP,
            message: format!("more than {cap} independent {r}-sets; raise --max-sets"),
        });
    }
    let family = Family::from_canonical(r, sets).expect("enumeration is canonical");
    let body = match c.format {
        Format::Json => json::to_string(&FamilyJson::from(&family)),
        Format::Text | Format::Csv => family.iter().map(|s| format!("{s}\n")).collect(),
    };
    emit(io, &c.out, &body)?;
    Ok(EXIT_OK)
}

fn cmd_property_suite(io: &mut Io<'_>, suite: Suite, count: u64, c: &Common) -> Result<i32, Exit> {
    let exec = pool(c)?;
    let (body, failures, summary) = match suite {
        Suite::Lemma => {
            let s = suites::lemma_suite(c.seed, count, &exec);
            let summary = format!(
                "lemma suite, seed {}: {} instances, {} decompositions, {} failures",
                c.seed, s.count, s.decompositions, s.failures
            );
            (json::to_string(&s), s.failures, summary)
        }
        Suite::Star => {
            let s = suites::star_suite(&suites::sweep_graphs(10), 4, &exec);
            let summary = format!(
                "star suite: {} graphs, {} identities, {} isolated-star checks, {} failures",
                s.graphs.len(),
                s.identities,
                s.isolated_checks,
                s.failures
            );
            (json::to_string(&s), s.failures, summary)
        }
        Suite::Oracle => {
            let cases = suites::oracle_cases(c.seed, count, 18);
            let s = suites::oracle_suite(&cases, 18, &limits(c), &exec);
            let summary = format!(
                "oracle suite, seed {}: {} cases, {} mismatches",
                c.seed, s.cases, s.mismatches
            );
            (json::to_string(&s), s.mismatches, summary)
        }
        Suite::Path => {
            let s = suites::path_suite(12, 3, &exec);
            let summary = format!(
                "path certificates: {} certificates, {} failures",
                s.certificates, s.failures
            );
            (json::to_string(&s), s.failures, summary)
        }
    };
    match c.format {
        Format::Json => emit(io, &c.out, &body)?,
        Format::Text => emit(io, &c.out, &format!("{summary}\n"))?,
        Format::Csv => return Err(usage("property-suite supports text and json output")),
    }
    if c.format == Format::Json {
        io.note(&summary);
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    let result = match &cli.command {
        Command::Verify { graph, r, common } => cmd_verify(&mut io, graph, *r as usize, common),
        Command::Decompose {
            graph,
            edge,
            family,
            x,
            r,
            common,
        } => cmd_decompose(
            &mut io,
            graph,
            edge,
            family.as_deref(),
            *x,
            r.map(|r| r as usize),
            common,
        ),
        Command::Sweep {
            class,
            n_max,
            k_max,
            r,
            certificate,
            common,
        } => cmd_sweep(
            &mut io,
            class,
            *n_max,
            *k_max,
            r.map(|r| r as usize),
            certificate,
            common,
        ),
        Command::Enumerate { graph, r, common } => cmd_enumerate(&mut io, graph, *r as usize, common),
        Command::PropertySuite {
            suite,
            count,
            common,
        } => cmd_property_suite(&mut io, *suite, *count, common),
    };
    match result {
        Ok(code) => code,
        Err(exit) => {
            io.note(&format!("error: {}", exit.message));
            exit.code
        }
    }
}

pub fn main() -> ! {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code)
}
