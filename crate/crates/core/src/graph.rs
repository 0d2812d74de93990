//! Labelled simple graphs and the edge operators `G/e` and `G↓e`.
//!
//! Vertices are the labels `1..=n`. Every operator returns a fresh graph
//! together with a [`VertexMap`] describing where each old label went, so
//! set families can be carried across.

use alloc::vec;
use alloc::vec::Vec;

use crate::spec::GraphSpec;
use crate::vertex_set::VertexSet;

/// A vertex label, always in `1..=order`.
pub type Vertex = usize;

/// Largest supported order. Each adjacency row is one 64-bit mask.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{what} must be at least 1")]
    ZeroParameter { what: &'static str },
    #[error("graph order {order} exceeds the cap of {cap} vertices")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("vertex {vertex} is not in 1..={order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("{{{v},{w}}} is not an edge")]
    NotAnEdge { v: Vertex, w: Vertex },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("a disjoint union needs at least one part")]
    EmptyUnion,
    #[error("vertex {0} is removed by the map")]
    VertexRemoved(Vertex),
    #[error("inconsistent vertex map: {0}")]
    BadMap(&'static str),
}

/// An immutable simple undirected graph on the labels `1..=order`.
///
/// Equality compares order and adjacency only; provenance is ignored.
#[derive(Clone, Debug)]
pub struct Graph {
    order: usize,
    rows: Vec<VertexSet>,
    provenance: Option<GraphSpec>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rows == other.rows
    }
}

impl Eq for Graph {}

fn check_order(order: usize) -> Result<(), GraphError> {
    if order > MAX_ORDER {
        return Err(GraphError::OrderTooLarge {
            order,
            cap: MAX_ORDER,
        });
    }
    Ok(())
}

fn positive(value: usize, what: &'static str) -> Result<(), GraphError> {
    if value == 0 {
        Err(GraphError::ZeroParameter { what })
    } else {
        Ok(())
    }
}

impl Graph {
    fn from_rule(order: usize, adjacent: impl Fn(Vertex, Vertex) -> bool) -> Self {
        let mut rows = vec![VertexSet::EMPTY; order];
        for a in 1..=order {
            for b in a + 1..=order {
                if adjacent(a, b) {
                    rows[a - 1] = rows[a - 1].with(b);
                    rows[b - 1] = rows[b - 1].with(a);
                }
            }
        }
        Graph {
            order,
            rows,
            provenance: None,
        }
    }

    fn with_provenance(mut self, spec: GraphSpec) -> Self {
        self.provenance = Some(spec);
        self
    }

    /// `E_n`: `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        positive(n, "order")?;
        check_order(n)?;
        Ok(Self::from_rule(n, |_, _| false).with_provenance(GraphSpec::Empty(n)))
    }

    /// `K_t`.
    pub fn complete(t: usize) -> Result<Self, GraphError> {
        positive(t, "order")?;
        check_order(t)?;
        Ok(Self::from_rule(t, |_, _| true).with_provenance(GraphSpec::Complete(t)))
    }

    /// `P_n^k`: `a ~ b` iff `1 <= |a - b| <= k`.
    pub fn path_power(n: usize, k: usize) -> Result<Self, GraphError> {
        positive(n, "order")?;
        positive(k, "power")?;
        check_order(n)?;
        Ok(Self::from_rule(n, |a, b| b - a <= k).with_provenance(GraphSpec::Path(n, k)))
    }

    /// `C_n^k`: `a ~ b` iff the circular distance of `a` and `b` is at most `k`.
    pub fn cycle_power(n: usize, k: usize) -> Result<Self, GraphError> {
        positive(n, "order")?;
        positive(k, "power")?;
        check_order(n)?;
        Ok(Self::from_rule(n, |a, b| {
            let d = b - a;
            d.min(n - d) <= k
        })
        .with_provenance(GraphSpec::Cycle(n, k)))
    }

    /// Graph on `1..=order` with the listed edges. `order` may be zero.
    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        check_order(order)?;
        let mut rows = vec![VertexSet::EMPTY; order];
        for (a, b) in edges {
            for v in [a, b] {
                if !(1..=order).contains(&v) {
                    return Err(GraphError::VertexOutOfRange { vertex: v, order });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            rows[a - 1] = rows[a - 1].with(b);
            rows[b - 1] = rows[b - 1].with(a);
        }
        let mut g = Graph {
            order,
            rows,
            provenance: None,
        };
        g.provenance = Some(g.edge_list_spec());
        Ok(g)
    }

    /// Disjoint union, relabelling each part consecutively after the previous one.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Self, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::EmptyUnion);
        }
        let order: usize = parts.iter().map(|p| p.order).sum();
        check_order(order)?;
        let mut rows = Vec::with_capacity(order);
        let mut offset = 0;
        for part in parts {
            for row in &part.rows {
                rows.push(VertexSet::from_bits(row.bits() << offset));
            }
            offset += part.order;
        }
        let provenance = parts
            .iter()
            .map(|p| p.provenance.clone())
            .collect::<Option<Vec<_>>>()
            .map(GraphSpec::union);
        Ok(Graph {
            order,
            rows,
            provenance,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.order)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            let a = i + 1;
            row.iter().filter(move |&b| b > a).map(move |b| (a, b))
        })
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        (1..=self.order).contains(&a) && self.rows[a - 1].contains(b)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if (1..=self.order).contains(&v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    /// `Γ(v)`.
    pub fn neighbors(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.rows[v - 1])
    }

    /// `Γ(v)` for a label already known to be in range.
    pub(crate) fn row(&self, v: Vertex) -> VertexSet {
        self.rows[v - 1]
    }

    /// Validates `{v, w}` as an edge of this graph, keeping the given orientation.
    pub fn edge(&self, v: Vertex, w: Vertex) -> Result<EdgeRef, GraphError> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if !self.is_adjacent(v, w) {
            return Err(GraphError::NotAnEdge { v, w });
        }
        Ok(EdgeRef { v, w })
    }

    /// The construction this graph came from, if it was built from a spec.
    pub fn provenance(&self) -> Option<&GraphSpec> {
        self.provenance.as_ref()
    }

    /// A spec that rebuilds this graph exactly: the provenance when known,
    /// otherwise an explicit edge list.
    pub fn spec(&self) -> GraphSpec {
        self.provenance
            .clone()
            .unwrap_or_else(|| self.edge_list_spec())
    }

    fn edge_list_spec(&self) -> GraphSpec {
        GraphSpec::Edges {
            order: self.order,
            edges: self.edges().collect(),
        }
    }

    /// Subgraph induced by `keep`, relabelled to `1..=|keep|` in increasing order.
    pub fn induced(&self, keep: VertexSet) -> (Graph, VertexMap) {
        let keep = keep.intersection(self.vertices());
        let mut images = vec![None; self.order];
        for (new, old) in keep.iter().enumerate() {
            images[old - 1] = Some(new + 1);
        }
        let order = keep.len();
        let mut rows = Vec::with_capacity(order);
        for old in keep.iter() {
            let mut row = VertexSet::EMPTY;
            for u in self.rows[old - 1].intersection(keep).iter() {
                row = row.with(images[u - 1].expect("kept vertex has an image"));
            }
            rows.push(row);
        }
        let g = Graph {
            order,
            rows,
            provenance: None,
        };
        let map = VertexMap {
            kind: MapKind::Deletion,
            images,
            target_order: order,
        };
        (g, map)
    }

    /// `G/e`: identify `w` with `v`, drop the loop and merge parallel edges.
    /// Labels are compacted to `1..=n-1` in order; `w` maps to the image of `v`.
    pub fn contract(&self, e: EdgeRef) -> Result<(Graph, VertexMap), GraphError> {
        let e = self.edge(e.v, e.w)?;
        let (v, w) = (e.v, e.w);
        let relabel = |x: Vertex| if x > w { x - 1 } else { x };
        let images: Vec<Option<Vertex>> = (1..=self.order)
            .map(|x| Some(if x == w { relabel(v) } else { relabel(x) }))
            .collect();
        let order = self.order - 1;
        let mut rows = vec![VertexSet::EMPTY; order];
        for (a, b) in self.edges() {
            let (ca, cb) = (images[a - 1].unwrap(), images[b - 1].unwrap());
            if ca != cb {
                rows[ca - 1] = rows[ca - 1].with(cb);
                rows[cb - 1] = rows[cb - 1].with(ca);
            }
        }
        let g = Graph {
            order,
            rows,
            provenance: None,
        };
        let map = VertexMap {
            kind: MapKind::Contraction {
                survivor: v,
                absorbed: w,
            },
            images,
            target_order: order,
        };
        Ok((g, map))
    }

    /// The vertices deleted by `G↓e`: `{v, w} ∪ Γ(v) ∪ Γ(w)`.
    pub fn closed_edge_neighborhood(&self, e: EdgeRef) -> Result<VertexSet, GraphError> {
        let e = self.edge(e.v, e.w)?;
        Ok(self
            .row(e.v)
            .union(self.row(e.w))
            .with(e.v)
            .with(e.w))
    }

    /// `G↓e`: delete both ends of `e` and all their neighbours.
    pub fn down(&self, e: EdgeRef) -> Result<(Graph, VertexMap), GraphError> {
        let removed = self.closed_edge_neighborhood(e)?;
        Ok(self.induced(self.vertices().difference(removed)))
    }
}

/// An oriented edge `e = {v, w}`: under contraction `w` is absorbed into `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    v: Vertex,
    w: Vertex,
}

impl EdgeRef {
    /// An unvalidated edge reference; operators check it against their graph.
    pub fn new(v: Vertex, w: Vertex) -> Self {
        EdgeRef { v, w }
    }

    /// The surviving end.
    pub fn v(self) -> Vertex {
        self.v
    }

    /// The absorbed end.
    pub fn w(self) -> Vertex {
        self.w
    }

    /// Swapping the ends swaps the roles of `D` and `E` in a decomposition.
    pub fn swapped(self) -> Self {
        EdgeRef {
            v: self.w,
            w: self.v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// `c`: `absorbed ↦ survivor`, identity elsewhere, then compacted.
    Contraction { survivor: Vertex, absorbed: Vertex },
    /// Deleted labels have no image; survivors keep their relative order.
    Deletion,
}

/// Total map from old labels to new labels (or to "removed").
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    kind: MapKind,
    images: Vec<Option<Vertex>>,
    target_order: usize,
}

impl VertexMap {
    /// Rebuilds a map from its image table, checking the invariants of its kind.
    pub fn from_images(
        kind: MapKind,
        images: Vec<Option<Vertex>>,
        target_order: usize,
    ) -> Result<Self, GraphError> {
        let mut hits = vec![0usize; target_order];
        for img in images.iter().flatten() {
            if !(1..=target_order).contains(img) {
                return Err(GraphError::BadMap("image outside the target range"));
            }
            hits[img - 1] += 1;
        }
        match kind {
            MapKind::Contraction { survivor, absorbed } => {
                let source = images.len();
                if !(1..=source).contains(&survivor)
                    || !(1..=source).contains(&absorbed)
                    || survivor == absorbed
                {
                    return Err(GraphError::BadMap("contraction edge outside the source"));
                }
                if images.iter().any(Option::is_none) {
                    return Err(GraphError::BadMap("contraction must be total"));
                }
                if hits.contains(&0) {
                    return Err(GraphError::BadMap("contraction must be surjective"));
                }
                if hits.iter().filter(|&&h| h == 2).count() != 1 || hits.iter().any(|&h| h > 2) {
                    return Err(GraphError::BadMap(
                        "contraction must merge exactly one pair",
                    ));
                }
                if images[survivor - 1] != images[absorbed - 1] {
                    return Err(GraphError::BadMap("contraction must merge its edge"));
                }
            }
            MapKind::Deletion => {
                if hits.iter().any(|&h| h != 1) {
                    return Err(GraphError::BadMap(
                        "deletion must be a bijection onto the survivors",
                    ));
                }
            }
        }
        Ok(VertexMap {
            kind,
            images,
            target_order,
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Image table indexed by `old label - 1`.
    pub fn images(&self) -> &[Option<Vertex>] {
        &self.images
    }

    pub fn image(&self, v: Vertex) -> Result<Option<Vertex>, GraphError> {
        if !(1..=self.images.len()).contains(&v) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.images.len(),
            });
        }
        Ok(self.images[v - 1])
    }

    /// Old labels that have an image.
    pub fn retained(&self) -> VertexSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, img)| img.is_some())
            .fold(VertexSet::EMPTY, |acc, (i, _)| acc.with(i + 1))
    }

    /// Image of a set. Fails if a member is out of range or removed.
    pub fn map_set(&self, set: VertexSet) -> Result<VertexSet, GraphError> {
        let mut out = VertexSet::EMPTY;
        for v in set.iter() {
            match self.image(v)? {
                Some(img) => out = out.with(img),
                None => return Err(GraphError::VertexRemoved(v)),
            }
        }
        Ok(out)
    }

    /// Full preimage of a set of new labels.
    pub fn pull_back(&self, set: VertexSet) -> VertexSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, img)| img.is_some_and(|i| set.contains(i)))
            .fold(VertexSet::EMPTY, |acc, (i, _)| acc.with(i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[Vertex]) -> VertexSet {
        VertexSet::try_from_labels(labels.iter().copied()).unwrap()
    }

    fn assert_simple(g: &Graph) {
        for a in 1..=g.order() {
            assert!(!g.is_adjacent(a, a));
            for b in 1..=g.order() {
                assert_eq!(g.is_adjacent(a, b), g.is_adjacent(b, a));
            }
        }
    }

    /// Edge count straight from the adjacency rule.
    fn count_pairs(n: usize, rule: impl Fn(usize, usize) -> bool) -> usize {
        (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .filter(|&(a, b)| rule(a, b))
            .count()
    }

    #[test]
    fn standard_families() {
        let e1 = Graph::empty(1).unwrap();
        assert_eq!((e1.order(), e1.edge_count()), (1, 0));
        let e4 = Graph::empty(4).unwrap();
        assert_eq!(e4.edge_count(), 0);
        assert_eq!(count_pairs(4, |a, b| !e4.is_adjacent(a, b)), 6);
        assert_eq!(Graph::complete(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(2).unwrap().edge_count(), 1);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        assert_eq!(Graph::path_power(4, 1).unwrap().edge_count(), 3);
        assert_eq!(count_pairs(7, |a, b| b - a <= 2), 11);
        assert_eq!(Graph::path_power(7, 2).unwrap().edge_count(), 11);
        assert_eq!(Graph::path_power(3, 5).unwrap(), Graph::complete(3).unwrap());
        assert_eq!(Graph::cycle_power(6, 1).unwrap().edge_count(), 6);
        assert_eq!(Graph::cycle_power(5, 2).unwrap(), Graph::complete(5).unwrap());
        assert_eq!(
            count_pairs(8, |a, b| (b - a).min(8 - (b - a)) <= 2),
            16
        );
        assert_eq!(Graph::cycle_power(8, 2).unwrap().edge_count(), 16);
    }

    #[test]
    fn zero_and_oversized_orders_are_rejected() {
        assert!(matches!(Graph::empty(0), Err(GraphError::ZeroParameter { .. })));
        assert!(Graph::complete(0).is_err());
        assert!(Graph::path_power(3, 0).is_err());
        assert!(matches!(
            Graph::empty(65),
            Err(GraphError::OrderTooLarge { order: 65, cap: 64 })
        ));
        assert!(Graph::empty(64).is_ok());
        assert_eq!(Graph::disjoint_union(&[]), Err(GraphError::EmptyUnion));
    }

    #[test]
    fn disjoint_unions() {
        let g = Graph::disjoint_union(&[Graph::complete(2).unwrap(), Graph::complete(3).unwrap()])
            .unwrap();
        assert_eq!(g.order(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 2), (3, 4), (3, 5), (4, 5)]);

        let g = Graph::disjoint_union(&[
            Graph::complete(1).unwrap(),
            Graph::path_power(3, 1).unwrap(),
            Graph::cycle_power(4, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.neighbors(1).unwrap().is_empty());
        assert_eq!(g.edge_count(), 6);

        let k2 = Graph::complete(2).unwrap();
        let matching = Graph::disjoint_union(&[k2.clone(), k2.clone(), k2]).unwrap();
        assert_eq!(matching.order(), 6);
        for v in 1..=6 {
            assert_eq!(matching.neighbors(v).unwrap().len(), 1);
        }
    }

    #[test]
    fn neighbourhoods() {
        assert!(Graph::empty(5).unwrap().neighbors(2).unwrap().is_empty());
        assert_eq!(Graph::path_power(7, 1).unwrap().neighbors(7).unwrap(), set(&[6]));
        assert_eq!(
            Graph::path_power(7, 2).unwrap().neighbors(4).unwrap(),
            set(&[2, 3, 5, 6])
        );
        assert!(matches!(
            Graph::empty(3).unwrap().neighbors(4),
            Err(GraphError::VertexOutOfRange { vertex: 4, order: 3 })
        ));
    }

    #[test]
    fn contraction_examples() {
        let p7 = Graph::path_power(7, 1).unwrap();
        let (g, map) = p7.contract(EdgeRef::new(6, 7)).unwrap();
        assert_eq!(g, Graph::path_power(6, 1).unwrap());
        assert_eq!(map.image(7).unwrap(), Some(6));

        let k4 = Graph::complete(4).unwrap();
        let (g, _) = k4.contract(EdgeRef::new(3, 4)).unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());

        let g = Graph::disjoint_union(&[Graph::complete(2).unwrap(), Graph::complete(3).unwrap()])
            .unwrap();
        let (h, _) = g.contract(EdgeRef::new(4, 5)).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(h, Graph::disjoint_union(&[k2.clone(), k2]).unwrap());

        assert_eq!(
            p7.contract(EdgeRef::new(1, 3)).unwrap_err(),
            GraphError::NotAnEdge { v: 1, w: 3 }
        );
    }

    #[test]
    fn contraction_relabels_around_absorbed_vertex() {
        // Absorbing a low label shifts everything above it down by one.
        let c5 = Graph::cycle_power(5, 1).unwrap();
        let (g, map) = c5.contract(EdgeRef::new(3, 2)).unwrap();
        assert_eq!(g, Graph::cycle_power(4, 1).unwrap());
        let images: Vec<_> = map.images().iter().map(|i| i.unwrap()).collect();
        assert_eq!(images, vec![1, 2, 2, 3, 4]);
        assert_simple(&g);
    }

    #[test]
    fn down_examples() {
        let p7 = Graph::path_power(7, 1).unwrap();
        let (g, map) = p7.down(EdgeRef::new(6, 7)).unwrap();
        assert_eq!(g, Graph::path_power(4, 1).unwrap());
        assert_eq!(map.retained(), set(&[1, 2, 3, 4]));

        let g = Graph::disjoint_union(&[Graph::complete(2).unwrap(), Graph::complete(3).unwrap()])
            .unwrap();
        let (h, map) = g.down(EdgeRef::new(4, 5)).unwrap();
        assert_eq!(h, Graph::complete(2).unwrap());
        assert_eq!(map.pull_back(h.vertices()), set(&[1, 2]));

        let (h, _) = Graph::complete(4).unwrap().down(EdgeRef::new(1, 2)).unwrap();
        assert_eq!(h.order(), 0);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn map_validation() {
        let p4 = Graph::path_power(4, 1).unwrap();
        let (_, c) = p4.contract(EdgeRef::new(3, 4)).unwrap();
        let rebuilt = VertexMap::from_images(c.kind(), c.images().to_vec(), 3).unwrap();
        assert_eq!(rebuilt, c);
        assert!(VertexMap::from_images(c.kind(), vec![Some(1), Some(2), Some(3), Some(3)], 4)
            .is_err());
        assert!(VertexMap::from_images(MapKind::Deletion, vec![Some(1), Some(1)], 2).is_err());
    }

    #[test]
    fn path_power_operators_match_smaller_path_powers() {
        for k in 1..=4 {
            for n in k + 2..=20 {
                let p = Graph::path_power(n, k).unwrap();
                let e = p.edge(n - 1, n).unwrap();
                let (c, _) = p.contract(e).unwrap();
                assert_eq!(c, Graph::path_power(n - 1, k).unwrap(), "n={n} k={k}");
                if n >= k + 3 {
                    let (d, _) = p.down(e).unwrap();
                    assert_eq!(d, Graph::path_power(n - k - 2, k).unwrap(), "n={n} k={k}");
                }
            }
        }
    }
}
