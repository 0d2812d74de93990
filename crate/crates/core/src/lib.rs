//! Exact verification of Erdős–Ko–Rado properties of small graphs.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`graph`]: labelled simple graphs, the standard families (empty,
//!   complete, path and cycle powers, disjoint unions) and the two edge
//!   operators, contraction `G/e` and closed-neighbourhood deletion `G↓e`;
//! * [`spec`]: the textual graph-spec language used to name graphs;
//! * [`families`]: independent `r`-sets, stars and intersecting families;
//! * [`compression`]: the edge-compression decomposition of an intersecting
//!   family, the star identity and the path-power certificate, each with a
//!   verifier;
//! * [`solver`]: exact maximum intersecting families, strictness verdicts
//!   and theorem sweeps.
//!
//! Parallel execution is abstracted behind [`exec::Executor`]; the default
//! [`exec::Sequential`] executor runs everything on the calling thread and
//! every executor produces identical results.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod compression;
pub mod exec;
pub mod families;
pub mod graph;
pub mod solver;
pub mod spec;
pub mod sweep;
mod vertex_set;

pub use compression::{
    contraction_image, decompose, path_certificate, star_components, verify_partition_lemma,
    CompressionError, Decomposition, PartitionReport, PathCertificate, StarComponents,
};
pub use families::{
    enumerate_independent, is_independent, max_star, star, Family, FamilyError, MaxStar,
};
pub use graph::{EdgeRef, Graph, GraphError, MapKind, Vertex, VertexMap, MAX_ORDER};
pub use solver::{
    ekr_verdict, ekr_verdict_with, enumerate_maximum_families, enumerate_maximum_families_with,
    max_intersecting, max_intersecting_with, EkrReport, Limits, MaxIntersecting, MaximumFamilies,
    SolverError, Strictness,
};
pub use spec::{parse_graph_spec, parse_spec, GraphSpec, SpecError};
pub use vertex_set::VertexSet;
