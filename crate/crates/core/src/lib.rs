//! Exact and adaptive-sampling betweenness centrality (BC) for undirected,
//! unweighted graphs.
//!
//! * [`graph`] and [`bfs`] hold the compressed graph, the SNAP edge-list
//!   reader and breadth-first shortest-path counting.
//! * [`brandes`] computes exact BC for every vertex and the exact
//!   single-target quantities the samplers estimate.
//! * [`vertex`] and [`pair`] are the two adaptive estimators of the BC of one
//!   target vertex: sampling source vertices, or sampling ordered pairs.
//! * [`model`] is the stick-breaking model of per-sample dependencies with its
//!   moments, tail bounds and a Monte Carlo harness to check them.
//!
//! BC is the ordered-pair sum without the 1/2 normalisation, so a path
//! `0 - 1 - 2` gives vertex 1 a BC of 2.

pub mod bfs;
pub mod brandes;
mod error;
pub mod fixtures;
pub mod graph;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod pair;
pub mod sampling;
pub mod vertex;

pub use bfs::{bfs_sssp, bfs_truncated, bfs_until, BfsResult};
pub use brandes::{accumulate_dependencies, brandes_bc, pair_dependency, BcVector, DependencyVector};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Graph, Vertex};
pub use pair::{estimate_bc_pair, pair_guarantee, PairSampler};
pub use sampling::{rng_for, Draw, EstimateRun, FixedRun, Guarantee, Method, SamplerConfig, TraceEntry};
pub use vertex::{estimate_bc_vertex, vertex_guarantee, VertexSampler};
