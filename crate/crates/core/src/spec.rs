//! The graph-spec language.
//!
//! ```text
//! spec  := "empty:" N | "complete:" N | "path:" N ":" K | "cycle:" N ":" K
//!        | "union:" spec ("+" spec)*
//!        | "edges:" N ":" [ N "-" N ("," N "-" N)* ]
//! ```
//!
//! Nested unions are flattened. `edges:` names an arbitrary graph and is
//! what derived graphs (contractions, deletions, random graphs) render as.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Empty(usize),
    Complete(usize),
    Path(usize, usize),
    Cycle(usize, usize),
    /// Never nested; see [`GraphSpec::union`].
    Union(Vec<GraphSpec>),
    /// Edges are normalised to `a < b`, sorted and deduplicated.
    Edges {
        order: usize,
        edges: Vec<(Vertex, Vertex)>,
    },
}

impl GraphSpec {
    /// A flattened union of `parts`.
    pub fn union(parts: impl IntoIterator<Item = GraphSpec>) -> GraphSpec {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                GraphSpec::Union(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        GraphSpec::Union(flat)
    }

    pub fn edges(order: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> GraphSpec {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        GraphSpec::Edges { order, edges }
    }

    /// Number of vertices the spec describes.
    pub fn order(&self) -> usize {
        match self {
            GraphSpec::Empty(n) | GraphSpec::Complete(n) => *n,
            GraphSpec::Path(n, _) | GraphSpec::Cycle(n, _) => *n,
            GraphSpec::Union(parts) => parts.iter().map(GraphSpec::order).sum(),
            GraphSpec::Edges { order, .. } => *order,
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphSpec::Empty(n) => Graph::empty(*n),
            GraphSpec::Complete(t) => Graph::complete(*t),
            GraphSpec::Path(n, k) => Graph::path_power(*n, *k),
            GraphSpec::Cycle(n, k) => Graph::cycle_power(*n, *k),
            GraphSpec::Union(parts) => {
                let built = parts
                    .iter()
                    .map(GraphSpec::build)
                    .collect::<Result<Vec<_>, _>>()?;
                Graph::disjoint_union(&built)
            }
            GraphSpec::Edges { order, edges } => Graph::from_edges(*order, edges.iter().copied()),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Empty(n) => write!(f, "empty:{n}"),
            GraphSpec::Complete(t) => write!(f, "complete:{t}"),
            GraphSpec::Path(n, k) => write!(f, "path:{n}:{k}"),
            GraphSpec::Cycle(n, k) => write!(f, "cycle:{n}:{k}"),
            GraphSpec::Union(parts) => {
                f.write_str("union:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GraphSpec::Edges { order, edges } => {
                write!(f, "edges:{order}:")?;
                for (i, (a, b)) in edges.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}-{b}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecErrorKind {
    #[error("unknown graph kind {0:?}")]
    UnknownKind(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("number too large")]
    Overflow,
    #[error("unexpected trailing input")]
    Trailing,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parse failure; `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph spec error at byte {position}: {kind}")]
pub struct SpecError {
    pub position: usize,
    pub kind: SpecErrorKind,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, kind: SpecErrorKind) -> SpecError {
        SpecError {
            position: self.pos,
            kind,
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &'static str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(SpecErrorKind::Expected(token)))
        }
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err(SpecErrorKind::Expected("a number")));
        }
        let value = self.rest()[..digits]
            .parse::<usize>()
            .map_err(|_| self.err(SpecErrorKind::Overflow))?;
        self.pos += digits;
        Ok(value)
    }

    fn spec(&mut self) -> Result<GraphSpec, SpecError> {
        let start = self.pos;
        let kind_len = self
            .rest()
            .bytes()
            .take_while(u8::is_ascii_alphabetic)
            .count();
        let kind = &self.rest()[..kind_len];
        self.pos += kind_len;
        let parsed = match kind {
            "empty" => {
                self.expect(":")?;
                GraphSpec::Empty(self.number()?)
            }
            "complete" => {
                self.expect(":")?;
                GraphSpec::Complete(self.number()?)
            }
            "path" | "cycle" => {
                self.expect(":")?;
                let n = self.number()?;
                self.expect(":")?;
                let k = self.number()?;
                if kind == "path" {
                    GraphSpec::Path(n, k)
                } else {
                    GraphSpec::Cycle(n, k)
                }
            }
            "union" => {
                self.expect(":")?;
                let mut parts = alloc::vec![self.spec()?];
                while self.eat("+") {
                    parts.push(self.spec()?);
                }
                GraphSpec::union(parts)
            }
            "edges" => {
                self.expect(":")?;
                let order = self.number()?;
                self.expect(":")?;
                let mut edges = Vec::new();
                if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                    loop {
                        let a = self.number()?;
                        self.expect("-")?;
                        let b = self.number()?;
                        edges.push((a, b));
                        if !self.eat(",") {
                            break;
                        }
                    }
                }
                GraphSpec::edges(order, edges)
            }
            other => {
                self.pos = start;
                return Err(self.err(SpecErrorKind::UnknownKind(other.into())));
            }
        };
        Ok(parsed)
    }
}

/// Parses a spec without building it.
pub fn parse_graph_spec(text: &str) -> Result<GraphSpec, SpecError> {
    let mut cursor = Cursor { text, pos: 0 };
    let spec = cursor.spec()?;
    if !cursor.rest().is_empty() {
        return Err(cursor.err(SpecErrorKind::Trailing));
    }
    Ok(spec)
}

/// Parses and builds a graph; the result carries the spec as provenance.
pub fn parse_spec(text: &str) -> Result<Graph, SpecError> {
    let spec = parse_graph_spec(text)?;
    spec.build().map_err(|e| SpecError {
        position: 0,
        kind: SpecErrorKind::Graph(e),
    })
}
