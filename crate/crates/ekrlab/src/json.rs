//! JSON certificate formats.
//!
//! Every record has a serde data type that mirrors the wire format and a
//! conversion from the corresponding core value. Formats that carry enough
//! information to be re-verified also convert back.

use ekrlab_core::compression::{
    CertificateCheck, DecompositionParts, PropertyCheck, Relation, StarComponents, Witness,
};
use ekrlab_core::solver::SearchStats;
use ekrlab_core::sweep::{RowOutcome, SweepRow};
use ekrlab_core::{
    parse_graph_spec, Decomposition, EdgeRef, EkrReport, Family, FamilyError, GraphError, MapKind,
    PartitionReport, PathCertificate, SpecError, Strictness, VertexMap, VertexSet,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid family: {0}")]
    Family(#[from] FamilyError),
    #[error("invalid graph spec: {0}")]
    Spec(#[from] SpecError),
    #[error("invalid graph data: {0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Field(String),
}

/// `{"r": 2, "sets": [[1,3],[1,4]]}`, sets sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub r: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<&Family> for FamilyJson {
    fn from(f: &Family) -> Self {
        FamilyJson {
            r: f.arity(),
            sets: f.iter().map(labels).collect(),
        }
    }
}

impl FamilyJson {
    /// Rejects duplicates, wrong arities and anything out of canonical order.
    pub fn to_family(&self) -> Result<Family, FamilyError> {
        let sets = self
            .sets
            .iter()
            .map(|s| Family::set_from_sorted(s))
            .collect::<Result<Vec<_>, _>>()?;
        Family::from_canonical(self.r, sets)
    }
}

pub fn labels(s: VertexSet) -> Vec<usize> {
    s.iter().collect()
}

pub fn parse_family(text: &str) -> Result<Family, FormatError> {
    let raw: FamilyJson = serde_json::from_str(text)?;
    Ok(raw.to_family()?)
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificate types serialise");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessJson {
    Set(Vec<usize>),
    Pair(Vec<usize>, Vec<usize>),
    /// `|A|, |B|, |C|, |D|, |E|`.
    Counts([usize; 5]),
}

impl From<Witness> for WitnessJson {
    fn from(w: Witness) -> Self {
        match w {
            Witness::Set(s) => WitnessJson::Set(labels(s)),
            Witness::Pair(a, b) => WitnessJson::Pair(labels(a), labels(b)),
            Witness::Counts(c) => WitnessJson::Counts(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaCheckJson {
    pub property: String,
    pub passed: bool,
    pub witness: Option<WitnessJson>,
}

impl From<&PropertyCheck> for LemmaCheckJson {
    fn from(c: &PropertyCheck) -> Self {
        LemmaCheckJson {
            property: c.property.label().to_string(),
            passed: c.passed,
            witness: c.witness.map(Into::into),
        }
    }
}

pub fn lemma_checks(report: &PartitionReport) -> Vec<LemmaCheckJson> {
    report.checks.iter().map(Into::into).collect()
}

/// Image tables of `c` and of the deletion onto `G↓e`; `null` marks a deleted label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexMapJson {
    pub contract: Vec<Option<usize>>,
    pub down: Vec<Option<usize>>,
}

/// An edge compression of `A` with its verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub graph: String,
    pub r: usize,
    pub edge: [usize; 2],
    #[serde(rename = "A")]
    pub a: FamilyJson,
    #[serde(rename = "B")]
    pub b: FamilyJson,
    /// In `G↓e` labels.
    #[serde(rename = "C")]
    pub c: FamilyJson,
    #[serde(rename = "D")]
    pub d: FamilyJson,
    #[serde(rename = "E")]
    pub e: FamilyJson,
    #[serde(rename = "G_contract")]
    pub g_contract: String,
    #[serde(rename = "G_down")]
    pub g_down: String,
    pub vertex_map: VertexMapJson,
    pub checks: Vec<LemmaCheckJson>,
}

impl DecompositionJson {
    pub fn new(d: &Decomposition, report: &PartitionReport) -> Self {
        DecompositionJson {
            graph: d.graph().spec().to_string(),
            r: d.arity(),
            edge: [d.edge().v(), d.edge().w()],
            a: d.family().into(),
            b: d.b().into(),
            c: d.c().into(),
            d: d.d().into(),
            e: d.e().into(),
            g_contract: d.contracted().spec().to_string(),
            g_down: d.down().spec().to_string(),
            vertex_map: VertexMapJson {
                contract: d.contract_map().images().to_vec(),
                down: d.down_map().images().to_vec(),
            },
            checks: lemma_checks(report),
        }
    }

    /// Rebuilds the decomposition exactly as stored, without recomputing
    /// anything, so that verification judges the file itself.
    pub fn to_decomposition(&self) -> Result<Decomposition, FormatError> {
        let graph = parse_graph_spec(&self.graph)?.build()?;
        let contracted = parse_graph_spec(&self.g_contract)?.build()?;
        let down = parse_graph_spec(&self.g_down)?.build()?;
        let [v, w] = self.edge;
        let contract_map = VertexMap::from_images(
            MapKind::Contraction {
                survivor: v,
                absorbed: w,
            },
            self.vertex_map.contract.clone(),
            contracted.order(),
        )?;
        let down_map =
            VertexMap::from_images(MapKind::Deletion, self.vertex_map.down.clone(), down.order())?;
        let family = self.a.to_family()?;
        if family.arity() != self.r {
            return Err(FormatError::Field(format!(
                "A has arity {} but r is {}",
                family.arity(),
                self.r
            )));
        }
        Ok(Decomposition::from_parts(DecompositionParts {
            graph,
            edge: EdgeRef::new(v, w),
            family,
            b: self.b.to_family()?,
            c: self.c.to_family()?,
            d: self.d.to_family()?,
            e: self.e.to_family()?,
            contracted,
            contract_map,
            down,
            down_map,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarComponentsJson {
    pub graph: String,
    pub edge: [usize; 2],
    pub x: usize,
    pub r: usize,
    pub star: FamilyJson,
    pub x_contract: usize,
    pub contracted_star: FamilyJson,
    pub x_down: usize,
    pub down_star: FamilyJson,
    #[serde(rename = "D_x")]
    pub d_x: FamilyJson,
    #[serde(rename = "E_x")]
    pub e_x: FamilyJson,
    pub merged_images: usize,
    pub onto: bool,
    pub lhs: usize,
    pub rhs: usize,
    pub identity_holds: bool,
    pub structure_holds: bool,
}

impl StarComponentsJson {
    pub fn new(graph: &str, edge: EdgeRef, s: &StarComponents) -> Self {
        StarComponentsJson {
            graph: graph.to_string(),
            edge: [edge.v(), edge.w()],
            x: s.x,
            r: s.arity,
            star: (&s.star).into(),
            x_contract: s.x_contracted,
            contracted_star: (&s.contracted_star).into(),
            x_down: s.x_down,
            down_star: (&s.down_star).into(),
            d_x: (&s.d_x).into(),
            e_x: (&s.e_x).into(),
            merged_images: s.merged_images,
            onto: s.onto,
            lhs: s.lhs(),
            rhs: s.rhs(),
            identity_holds: s.identity_holds(),
            structure_holds: s.structure_holds(),
        }
    }

    /// `5 = 4 + 1 + 0 + 0`.
    pub fn identity_line(&self) -> String {
        format!(
            "{} = {} + {} + {} + {}",
            self.lhs,
            self.contracted_star.sets.len(),
            self.down_star.sets.len(),
            self.d_x.sets.len(),
            self.e_x.sets.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateCheckJson {
    pub name: String,
    /// `eq`, `le` or `holds`.
    pub relation: String,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub passed: bool,
    pub witness: Option<WitnessJson>,
}

impl From<&CertificateCheck> for CertificateCheckJson {
    fn from(c: &CertificateCheck) -> Self {
        CertificateCheckJson {
            name: c.name.to_string(),
            relation: match c.relation {
                Relation::Equal => "eq",
                Relation::AtMost => "le",
                Relation::Holds => "holds",
            }
            .to_string(),
            lhs: c.lhs,
            rhs: c.rhs,
            passed: c.passed,
            witness: c.witness.map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathCertificateJson {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub passed: bool,
    pub decomposition: DecompositionJson,
    #[serde(rename = "F")]
    pub f: FamilyJson,
    #[serde(rename = "E_1")]
    pub e_1: FamilyJson,
    pub checks: Vec<CertificateCheckJson>,
}

impl From<&PathCertificate> for PathCertificateJson {
    fn from(c: &PathCertificate) -> Self {
        PathCertificateJson {
            n: c.n,
            k: c.k,
            r: c.r,
            passed: c.passed(),
            decomposition: DecompositionJson::new(&c.decomposition, &c.lemma),
            f: (&c.f).into(),
            e_1: (&c.e_1).into(),
            checks: c.checks.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsJson {
    pub independent_sets: usize,
    pub nodes: u64,
    pub max_families: u64,
}

impl From<&SearchStats> for StatsJson {
    fn from(s: &SearchStats) -> Self {
        StatsJson {
            independent_sets: s.independent_sets,
            nodes: s.nodes,
            max_families: s.max_families,
        }
    }
}

/// Elapsed time is left out so reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EkrReportJson {
    pub graph: String,
    pub r: usize,
    pub max_star_size: usize,
    pub star_argmax: Vec<usize>,
    pub max_intersecting_size: usize,
    pub witness: FamilyJson,
    pub is_ekr: bool,
    pub strictness: String,
    pub non_star_witness: Option<FamilyJson>,
    pub stats: StatsJson,
}

impl From<&EkrReport> for EkrReportJson {
    fn from(r: &EkrReport) -> Self {
        EkrReportJson {
            graph: r.graph.to_string(),
            r: r.r,
            max_star_size: r.max_star_size,
            star_argmax: r.star_argmax.clone(),
            max_intersecting_size: r.max_intersecting_size,
            witness: (&r.witness).into(),
            is_ekr: r.is_ekr,
            strictness: r.strictness.as_str().to_string(),
            non_star_witness: r.non_star_witness.as_ref().map(Into::into),
            stats: (&r.stats).into(),
        }
    }
}

impl EkrReportJson {
    pub fn to_report(&self) -> Result<EkrReport, FormatError> {
        let strictness = Strictness::parse(&self.strictness)
            .ok_or_else(|| FormatError::Field(format!("unknown strictness {:?}", self.strictness)))?;
        Ok(EkrReport {
            graph: parse_graph_spec(&self.graph)?,
            r: self.r,
            max_star_size: self.max_star_size,
            star_argmax: self.star_argmax.clone(),
            max_intersecting_size: self.max_intersecting_size,
            witness: self.witness.to_family()?,
            is_ekr: self.is_ekr,
            strictness,
            non_star_witness: self
                .non_star_witness
                .as_ref()
                .map(FamilyJson::to_family)
                .transpose()?,
            stats: SearchStats {
                independent_sets: self.stats.independent_sets,
                nodes: self.stats.nodes,
                max_families: self.stats.max_families,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRowJson {
    pub spec: String,
    pub r: usize,
    /// `checked` or `skipped`.
    pub status: String,
    pub report: Option<EkrReportJson>,
    pub skip_reason: Option<String>,
    pub violations: Vec<String>,
}

impl From<&SweepRow> for SweepRowJson {
    fn from(row: &SweepRow) -> Self {
        let (status, report, skip_reason) = match &row.outcome {
            RowOutcome::Checked { report, .. } => ("checked", Some(report.into()), None),
            RowOutcome::Skipped(e) => ("skipped", None, Some(e.to_string())),
        };
        SweepRowJson {
            spec: row.point.spec.to_string(),
            r: row.point.r,
            status: status.to_string(),
            report,
            skip_reason,
            violations: row.violations().iter().map(|v| v.describe()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepJson {
    pub class: String,
    pub n_max: usize,
    pub k_max: usize,
    pub r: Option<usize>,
    pub rows: Vec<SweepRowJson>,
}

/// Self-contained record of a failed claim; `verify --graph <graph> --r <r>` reproduces it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleJson {
    pub graph: String,
    pub r: usize,
    pub failing_check: String,
    pub family: FamilyJson,
    pub report: EkrReportJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use ekrlab_core::{decompose, ekr_verdict, parse_spec, verify_partition_lemma, Limits};

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::try_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn family_json_rejects_noncanonical() {
        let ok = parse_family(r#"{"r":2,"sets":[[1,3],[1,4],[2,4]]}"#).unwrap();
        assert_eq!(ok.len(), 3);
        for bad in [
            r#"{"r":2,"sets":[[1,3],[1,3]]}"#,
            r#"{"r":2,"sets":[[1,4],[1,3]]}"#,
            r#"{"r":2,"sets":[[1,3,5]]}"#,
            r#"{"r":2,"sets":[[3,1]]}"#,
            r#"{"r":2,"sets":[[0,1]]}"#,
            r#"{"r":2,"sets":[[1,3]],"extra":1}"#,
        ] {
            assert!(parse_family(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decomposition_round_trip() {
        let g = parse_spec("path:4:1").unwrap();
        let a = Family::new(2, [set(&[1, 3]), set(&[1, 4])]).unwrap();
        let d = decompose(&g, EdgeRef::new(3, 4), &a).unwrap();
        let report = verify_partition_lemma(&d).unwrap();
        let json = DecompositionJson::new(&d, &report);
        let text = to_string(&json);
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        let rebuilt = back.to_decomposition().unwrap();
        assert_eq!(rebuilt, d);
        assert!(verify_partition_lemma(&rebuilt).unwrap().all_passed());
        for key in ["\"B\"", "\"C\"", "\"D\"", "\"E\"", "\"G_contract\"", "\"G_down\"", "\"vertex_map\"", "\"checks\""] {
            assert!(text.contains(key), "{key}");
        }
    }

    #[test]
    fn report_round_trip() {
        let g = parse_spec("empty:4").unwrap();
        let rep = ekr_verdict(&g, 2, &Limits::default()).unwrap();
        let json = EkrReportJson::from(&rep);
        let back: EkrReportJson = serde_json::from_str(&to_string(&json)).unwrap();
        assert_eq!(back.to_report().unwrap(), rep);
    }
}
