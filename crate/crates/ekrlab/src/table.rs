//! Sweep tables as aligned text and CSV.

use ekrlab_core::solver::Strictness;
use ekrlab_core::sweep::{RowOutcome, SweepRow};

pub const COLUMNS: [&str; 8] = ["spec", "r", "star", "max", "ekr", "strict", "nodes", "ms"];

/// A sweep row with its wall-clock time, which only the tables show.
#[derive(Clone, Debug)]
pub struct TimedRow {
    pub row: SweepRow,
    pub ms: u128,
}

fn cells(t: &TimedRow) -> [String; 8] {
    let spec = t.row.point.spec.to_string();
    let r = t.row.point.r.to_string();
    match &t.row.outcome {
        RowOutcome::Checked { report, .. } => [
            spec,
            r,
            report.max_star_size.to_string(),
            report.max_intersecting_size.to_string(),
            report.is_ekr.to_string(),
            match report.strictness {
                Strictness::Strict => "true",
                Strictness::NotStrict => "false",
                Strictness::Vacuous => "vacuous",
                Strictness::UnknownCapHit => "unknown",
            }
            .to_string(),
            report.stats.nodes.to_string(),
            t.ms.to_string(),
        ],
        RowOutcome::Skipped(_) => [
            spec,
            r,
            "-".into(),
            "-".into(),
            "skipped".into(),
            "-".into(),
            "-".into(),
            t.ms.to_string(),
        ],
    }
}

/// Left-aligned text columns separated by two spaces.
pub fn text(rows: &[TimedRow]) -> String {
    let body: Vec<[String; 8]> = rows.iter().map(cells).collect();
    let mut widths = COLUMNS.map(str::len);
    for line in &body {
        for (w, c) in widths.iter_mut().zip(line) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut push = |line: &[&str]| {
        let mut s = String::new();
        for (i, c) in line.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(&format!("{c:<w$}", w = widths[i]));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    push(&COLUMNS);
    for line in &body {
        push(&line.each_ref().map(String::as_str));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(rows: &[TimedRow]) -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for t in rows {
        let line: Vec<String> = cells(t).iter().map(|c| csv_field(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
