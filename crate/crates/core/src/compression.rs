//! Edge compression of intersecting families.
//!
//! For an edge `e = {v, w}` of `G`, [`decompose`] splits an intersecting
//! family `A ⊆ I^(r)(G)` into
//!
//! * `B`: contraction images `c(A)` that stay independent in `G/e`,
//! * `C`: sets `A \ {v}` whose twin `(A \ {v}) ∪ {w}` is also in `A`,
//! * `D`: members holding `v` and a neighbour of `w`,
//! * `E`: members holding `w` and a neighbour of `v`,
//!
//! with `|A| = |B| + |C| + |D| + |E|`. [`verify_partition_lemma`] rechecks
//! the seven properties of such a split from scratch, [`star_components`]
//! computes the matching decomposition of a single star, and
//! [`path_certificate`] replays the counting chain for path powers.
//!
//! `B` lives in `G/e` labels and `C` in `G↓e` labels. Comparisons between
//! `C` and `D ∪ E` are done after pulling `C` back to the labels of `G`.

use alloc::vec::Vec;

use crate::families::{is_independent, star, Family, FamilyError};
use crate::graph::{EdgeRef, Graph, GraphError, MapKind, Vertex, VertexMap};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompressionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("vertex map is not a contraction")]
    NotAContraction,
    #[error("vertex {x} does not survive G↓e")]
    NotSurviving { x: Vertex },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("malformed decomposition: {0}")]
    Malformed(&'static str),
}

/// `c(A)`: the image of `A` under a contraction map, in `G/e` labels.
pub fn contraction_image(map: &VertexMap, set: VertexSet) -> Result<VertexSet, CompressionError> {
    if !matches!(map.kind(), MapKind::Contraction { .. }) {
        return Err(CompressionError::NotAContraction);
    }
    Ok(map.map_set(set)?)
}

/// The four families of an edge compression together with the graphs and
/// maps they are expressed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    graph: Graph,
    edge: EdgeRef,
    family: Family,
    b: Family,
    c: Family,
    d: Family,
    e: Family,
    contracted: Graph,
    contract_map: VertexMap,
    down: Graph,
    down_map: VertexMap,
}

/// Component graphs and maps of a decomposition, for rebuilding one that
/// was stored elsewhere. Nothing is checked until verification.
#[derive(Clone, Debug)]
pub struct DecompositionParts {
    pub graph: Graph,
    pub edge: EdgeRef,
    pub family: Family,
    pub b: Family,
    pub c: Family,
    pub d: Family,
    pub e: Family,
    pub contracted: Graph,
    pub contract_map: VertexMap,
    pub down: Graph,
    pub down_map: VertexMap,
}

impl Decomposition {
    pub fn from_parts(p: DecompositionParts) -> Self {
        Decomposition {
            graph: p.graph,
            edge: p.edge,
            family: p.family,
            b: p.b,
            c: p.c,
            d: p.d,
            e: p.e,
            contracted: p.contracted,
            contract_map: p.contract_map,
            down: p.down,
            down_map: p.down_map,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn edge(&self) -> EdgeRef {
        self.edge
    }
    pub fn arity(&self) -> usize {
        self.family.arity()
    }
    /// The input family `A`.
    pub fn family(&self) -> &Family {
        &self.family
    }
    pub fn b(&self) -> &Family {
        &self.b
    }
    pub fn c(&self) -> &Family {
        &self.c
    }
    pub fn d(&self) -> &Family {
        &self.d
    }
    pub fn e(&self) -> &Family {
        &self.e
    }
    pub fn contracted(&self) -> &Graph {
        &self.contracted
    }
    pub fn contract_map(&self) -> &VertexMap {
        &self.contract_map
    }
    pub fn down(&self) -> &Graph {
        &self.down
    }
    pub fn down_map(&self) -> &VertexMap {
        &self.down_map
    }

    /// `C` in the labels of `G`.
    pub fn c_in_graph_labels(&self) -> Family {
        let sets = self.c.iter().map(|s| self.down_map.pull_back(s));
        Family::new(self.c.arity(), sets).expect("pull-back preserves arity")
    }
}

/// `D`-style membership: holds `keep` and meets `Γ(other)` elsewhere.
fn blocked_by(g: &Graph, set: VertexSet, keep: Vertex, other: Vertex) -> bool {
    set.contains(keep) && g.row(other).intersects(set.without(keep))
}

fn require_intersecting(a: &Family) -> Result<(), FamilyError> {
    match a.disjoint_pair() {
        Some((x, y)) => Err(FamilyError::NotIntersecting(x, y)),
        None => Ok(()),
    }
}

/// Splits an intersecting family along `e`.
pub fn decompose(g: &Graph, e: EdgeRef, a: &Family) -> Result<Decomposition, CompressionError> {
    let e = g.edge(e.v(), e.w())?;
    let (v, w) = (e.v(), e.w());
    let r = a.arity();
    if r == 0 {
        return Err(CompressionError::Precondition("family arity must be at least 1"));
    }
    a.check_independent_in(g)?;
    require_intersecting(a)?;

    let (contracted, contract_map) = g.contract(e)?;
    let (down, down_map) = g.down(e)?;

    let mut b = Vec::new();
    for s in a.iter() {
        let image = contract_map.map_set(s)?;
        if image.len() == r && is_independent(&contracted, image)? {
            b.push(image);
        }
    }
    let mut c = Vec::new();
    for s in a.iter().filter(|s| s.contains(v)) {
        let rest = s.without(v);
        if a.contains(rest.with(w)) {
            c.push(down_map.map_set(rest)?);
        }
    }
    let d = a.filter(|s| blocked_by(g, s, v, w));
    let e_fam = a.filter(|s| blocked_by(g, s, w, v));

    Ok(Decomposition {
        graph: g.clone(),
        edge: e,
        family: a.clone(),
        b: Family::new(r, b)?,
        c: Family::new(r - 1, c)?,
        d,
        e: e_fam,
        contracted,
        contract_map,
        down,
        down_map,
    })
}

/// The seven properties of an edge compression, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaProperty {
    /// `|A| = |B| + |C| + |D| + |E|`.
    CountIdentity,
    /// `B ⊆ I^(r)(G/e)` is intersecting.
    ContractedIntersecting,
    /// `C ⊆ I^(r-1)(G↓e)` is intersecting.
    DownIntersecting,
    /// `D` is exactly the members with `v` and a neighbour of `w`.
    DDefinition,
    /// `E` is exactly the members with `w` and a neighbour of `v`.
    EDefinition,
    /// Members of `C` and of `D ∪ E` meet inside `V(G↓e)`.
    CMeetsDE,
    /// Members of `D` and of `E` meet inside `V(G↓e)`.
    DMeetsE,
}

impl LemmaProperty {
    pub const ALL: [LemmaProperty; 7] = [
        LemmaProperty::CountIdentity,
        LemmaProperty::ContractedIntersecting,
        LemmaProperty::DownIntersecting,
        LemmaProperty::DDefinition,
        LemmaProperty::EDefinition,
        LemmaProperty::CMeetsDE,
        LemmaProperty::DMeetsE,
    ];

    /// Roman numeral used in reports.
    pub fn label(self) -> &'static str {
        match self {
            LemmaProperty::CountIdentity => "i",
            LemmaProperty::ContractedIntersecting => "ii",
            LemmaProperty::DownIntersecting => "iii",
            LemmaProperty::DDefinition => "iv",
            LemmaProperty::EDefinition => "v",
            LemmaProperty::CMeetsDE => "vi",
            LemmaProperty::DMeetsE => "vii",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.label() == label)
    }
}

/// Evidence attached to a failed check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Set(VertexSet),
    Pair(VertexSet, VertexSet),
    /// `|A|, |B|, |C|, |D|, |E|`.
    Counts([usize; 5]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: LemmaProperty,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl PropertyCheck {
    fn from_witness(property: LemmaProperty, witness: Option<Witness>) -> Self {
        PropertyCheck {
            property,
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub checks: [PropertyCheck; 7],
}

impl PartitionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn in_range(order: usize, f: &Family) -> bool {
    f.iter().all(|s| s.max().is_none_or(|m| m <= order))
}

/// Subfamily of independent, pairwise-intersecting sets, or the first flaw.
fn intersecting_in(g: &Graph, f: &Family) -> Option<Witness> {
    for s in f.iter() {
        if !is_independent(g, s).unwrap_or(false) {
            return Some(Witness::Set(s));
        }
    }
    f.disjoint_pair().map(|(x, y)| Witness::Pair(x, y))
}

fn same_members(expected: &Family, actual: &Family) -> Option<Witness> {
    expected
        .iter()
        .find(|s| !actual.contains(*s))
        .or_else(|| actual.iter().find(|s| !expected.contains(*s)))
        .map(Witness::Set)
}

fn meet_within(
    left: impl Iterator<Item = VertexSet> + Clone,
    right: impl Iterator<Item = VertexSet>,
    region: VertexSet,
) -> Option<Witness> {
    for y in right {
        for x in left.clone() {
            if x.intersection(y).intersection(region).is_empty() {
                return Some(Witness::Pair(x, y));
            }
        }
    }
    None
}

/// Re-derives everything a decomposition claims and evaluates the seven
/// properties literally. Structural breaches (wrong graphs, maps, arities,
/// labels, or an input family that is not intersecting) are errors rather
/// than property failures.
pub fn verify_partition_lemma(d: &Decomposition) -> Result<PartitionReport, CompressionError> {
    use CompressionError::Malformed;

    let g = &d.graph;
    let e = g
        .edge(d.edge.v(), d.edge.w())
        .map_err(|_| Malformed("edge is not an edge of the graph"))?;
    let (v, w) = (e.v(), e.w());
    let r = d.family.arity();
    if r == 0 {
        return Err(Malformed("family arity must be at least 1"));
    }
    let (contracted, contract_map) = g.contract(e)?;
    let (down, down_map) = g.down(e)?;
    if contracted != d.contracted || contract_map != d.contract_map {
        return Err(Malformed("contracted graph or map does not match G/e"));
    }
    if down != d.down || down_map != d.down_map {
        return Err(Malformed("deleted graph or map does not match G↓e"));
    }
    if d.b.arity() != r || d.d.arity() != r || d.e.arity() != r || d.c.arity() + 1 != r {
        return Err(Malformed("family arities are inconsistent"));
    }
    if !in_range(g.order(), &d.family)
        || !in_range(g.order(), &d.d)
        || !in_range(g.order(), &d.e)
        || !in_range(contracted.order(), &d.b)
        || !in_range(down.order(), &d.c)
    {
        return Err(Malformed("a family uses labels outside its graph"));
    }
    if d.family.check_independent_in(g).is_err() || !d.family.is_intersecting() {
        return Err(Malformed("input family is not an intersecting family of independent sets"));
    }

    let counts = [
        d.family.len(),
        d.b.len(),
        d.c.len(),
        d.d.len(),
        d.e.len(),
    ];
    let count_ok = counts[0] == counts[1] + counts[2] + counts[3] + counts[4];

    let survivors = down_map.retained();
    let c_pulled: Vec<VertexSet> = d.c.iter().map(|s| down_map.pull_back(s)).collect();
    let d_or_e = d.d.iter().chain(d.e.iter());

    let checks = [
        PropertyCheck::from_witness(
            LemmaProperty::CountIdentity,
            (!count_ok).then_some(Witness::Counts(counts)),
        ),
        PropertyCheck::from_witness(
            LemmaProperty::ContractedIntersecting,
            intersecting_in(&contracted, &d.b),
        ),
        PropertyCheck::from_witness(LemmaProperty::DownIntersecting, intersecting_in(&down, &d.c)),
        PropertyCheck::from_witness(
            LemmaProperty::DDefinition,
            same_members(&d.family.filter(|s| blocked_by(g, s, v, w)), &d.d),
        ),
        PropertyCheck::from_witness(
            LemmaProperty::EDefinition,
            same_members(&d.family.filter(|s| blocked_by(g, s, w, v)), &d.e),
        ),
        PropertyCheck::from_witness(
            LemmaProperty::CMeetsDE,
            meet_within(c_pulled.iter().copied(), d_or_e, survivors),
        ),
        PropertyCheck::from_witness(
            LemmaProperty::DMeetsE,
            meet_within(d.d.iter(), d.e.iter(), survivors),
        ),
    ];
    Ok(PartitionReport { checks })
}

/// The star at `x` split along `e`, with `x` surviving `G↓e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarComponents {
    pub x: Vertex,
    pub arity: usize,
    /// `I_x^(r)(G)`.
    pub star: Family,
    /// Label of `x` in `G/e` and `I_x^(r)(G/e)` in those labels.
    pub x_contracted: Vertex,
    pub contracted_star: Family,
    /// Label of `x` in `G↓e` and `I_x^(r-1)(G↓e)` in those labels.
    pub x_down: Vertex,
    pub down_star: Family,
    pub d_x: Family,
    pub e_x: Family,
    /// Members of `I_x^(r)(G/e)` hit twice by `c` on `I_x^(r)(G) \ (D_x ∪ E_x)`.
    pub merged_images: usize,
    /// Whether `c` maps `I_x^(r)(G) \ (D_x ∪ E_x)` onto `I_x^(r)(G/e)`.
    pub onto: bool,
}

impl StarComponents {
    pub fn lhs(&self) -> usize {
        self.star.len()
    }

    pub fn rhs(&self) -> usize {
        self.contracted_star.len() + self.down_star.len() + self.d_x.len() + self.e_x.len()
    }

    /// `|I_x^(r)(G)| = |I_x^(r)(G/e)| + |I_x^(r-1)(G↓e)| + |D_x| + |E_x|`.
    pub fn identity_holds(&self) -> bool {
        self.lhs() == self.rhs()
    }

    /// `D_x` and `E_x` are disjoint, `c` is onto, and the doubly hit images
    /// are counted by the `G↓e` star.
    pub fn structure_holds(&self) -> bool {
        self.d_x.iter().all(|s| !self.e_x.contains(s))
            && self.onto
            && self.merged_images == self.down_star.len()
    }
}

pub fn star_components(
    g: &Graph,
    e: EdgeRef,
    x: Vertex,
    r: usize,
) -> Result<StarComponents, CompressionError> {
    let e = g.edge(e.v(), e.w())?;
    g.check_vertex(x)?;
    if r == 0 {
        return Err(CompressionError::Precondition("r must be at least 1"));
    }
    if g.closed_edge_neighborhood(e)?.contains(x) {
        return Err(CompressionError::NotSurviving { x });
    }
    let (v, w) = (e.v(), e.w());
    let (contracted, contract_map) = g.contract(e)?;
    let (down, down_map) = g.down(e)?;
    let x_contracted = contract_map.image(x)?.expect("contraction is total");
    let x_down = down_map.image(x)?.ok_or(CompressionError::NotSurviving { x })?;

    let star_g = star(g, x, r)?;
    let contracted_star = star(&contracted, x_contracted, r)?;
    let down_star = star(&down, x_down, r - 1)?;
    let d_x = star_g.filter(|s| blocked_by(g, s, v, w));
    let e_x = star_g.filter(|s| blocked_by(g, s, w, v));

    let mut images = Vec::new();
    for s in star_g.iter().filter(|s| !d_x.contains(*s) && !e_x.contains(*s)) {
        images.push(contract_map.map_set(s)?);
    }
    images.sort_unstable();
    let total = images.len();
    images.dedup();
    let merged_images = total - images.len();
    let onto = images.len() == contracted_star.len()
        && images.iter().all(|s| contracted_star.contains(*s));

    Ok(StarComponents {
        x,
        arity: r,
        star: star_g,
        x_contracted,
        contracted_star,
        x_down,
        down_star,
        d_x,
        e_x,
        merged_images,
        onto,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtMost,
    /// A structural statement with no numeric sides.
    Holds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CertificateCheck {
    fn compare(name: &'static str, relation: Relation, lhs: usize, rhs: usize) -> Self {
        let passed = match relation {
            Relation::Equal => lhs == rhs,
            Relation::AtMost => lhs <= rhs,
            Relation::Holds => unreachable!("numeric check"),
        };
        CertificateCheck {
            name,
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            passed,
            witness: None,
        }
    }

    fn holds(name: &'static str, witness: Option<Witness>) -> Self {
        CertificateCheck {
            name,
            relation: Relation::Holds,
            lhs: None,
            rhs: None,
            passed: witness.is_none(),
            witness,
        }
    }

    fn flag(name: &'static str, ok: bool) -> Self {
        CertificateCheck {
            name,
            relation: Relation::Holds,
            lhs: None,
            rhs: None,
            passed: ok,
            witness: None,
        }
    }
}

/// The counting chain behind the path-power bound, recomputed by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub decomposition: Decomposition,
    pub lemma: PartitionReport,
    /// `{A \ {n} : A ∈ E}`.
    pub f: Family,
    /// `{A ∈ I_1^(r)(P_n^k) : n-k-1, n ∈ A}`.
    pub e_1: Family,
    pub checks: Vec<CertificateCheck>,
}

impl PathCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CertificateCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Certifies `|A| ≤ |I_1^(r)(P_n^k)|` for an intersecting `A` by contracting
/// `{n-1, n}` and checking every step of the count. Needs `n ≥ k + 3`.
pub fn path_certificate(
    n: usize,
    k: usize,
    r: usize,
    a: &Family,
) -> Result<PathCertificate, CompressionError> {
    if k == 0 || r == 0 {
        return Err(CompressionError::Precondition("k and r must be at least 1"));
    }
    if n < k + 3 {
        return Err(CompressionError::Precondition("path certificate needs n >= k + 3"));
    }
    if a.arity() != r {
        return Err(CompressionError::Precondition("family arity must equal r"));
    }
    let g = Graph::path_power(n, k)?;
    let decomposition = decompose(&g, g.edge(n - 1, n)?, a)?;
    let lemma = verify_partition_lemma(&decomposition)?;
    let d = &decomposition;
    let split = n - k - 1;

    let contracted_path = Graph::path_power(n - 1, k)?;
    let down_path = Graph::path_power(n - k - 2, k)?;
    let prefix_path = Graph::path_power(split, k)?;
    let (prefix_induced, _) = g.induced(crate::VertexSet::prefix(split));

    let f = Family::new(r - 1, d.e().iter().map(|s| s.without(n)))?;
    let c_g = d.c_in_graph_labels();
    let cf = Family::new(r - 1, c_g.iter().chain(f.iter()))?;
    let c_and_f = c_g.iter().filter(|s| f.contains(*s)).count();

    let star_n = star(&g, 1, r)?;
    let star_contracted = star(&contracted_path, 1, r)?.len();
    let star_prefix = star(&prefix_path, 1, r - 1)?.len();
    let star_down = star(&down_path, 1, r - 1)?.len();
    let e_1 = star_n.filter(|s| s.contains(split) && s.contains(n));

    let expected_e = a.filter(|s| s.contains(n) && s.contains(split));
    let cf_outside = cf
        .iter()
        .find(|s| !is_independent(&prefix_path, *s).unwrap_or(false))
        .map(Witness::Set);

    use Relation::{AtMost, Equal};
    let checks = alloc::vec![
        CertificateCheck::flag("partition_lemma", lemma.all_passed()),
        CertificateCheck::flag("contract_is_path", d.contracted() == &contracted_path),
        CertificateCheck::flag("down_is_path", d.down() == &down_path),
        CertificateCheck::flag("prefix_is_path", prefix_induced == prefix_path),
        CertificateCheck::compare("d_empty", Equal, d.d().len(), 0),
        CertificateCheck::holds("e_members", same_members(&expected_e, d.e())),
        CertificateCheck::compare("c_f_disjoint", Equal, c_and_f, 0),
        CertificateCheck::compare("c_f_size", Equal, cf.len(), d.c().len() + d.e().len()),
        CertificateCheck::holds("c_f_independent", cf_outside),
        CertificateCheck::holds(
            "c_f_intersecting",
            cf.disjoint_pair().map(|(x, y)| Witness::Pair(x, y)),
        ),
        CertificateCheck::compare(
            "count_identity",
            Equal,
            a.len(),
            d.b().len() + d.c().len() + d.e().len(),
        ),
        CertificateCheck::compare("c_f_bound", AtMost, cf.len(), star_prefix),
        CertificateCheck::compare("b_bound", AtMost, d.b().len(), star_contracted),
        CertificateCheck::compare("sum_bound", AtMost, a.len(), star_contracted + star_prefix),
        CertificateCheck::compare(
            "star_recursion",
            Equal,
            star_n.len(),
            star_contracted + star_down + e_1.len(),
        ),
        CertificateCheck::compare("splice", Equal, star_prefix, star_down + e_1.len()),
        CertificateCheck::compare("final_bound", AtMost, a.len(), star_n.len()),
    ];

    Ok(PathCertificate {
        n,
        k,
        r,
        decomposition,
        lemma,
        f,
        e_1,
        checks,
    })
}
