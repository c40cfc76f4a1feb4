//! Exact solvers for Max-Weight c-Colorable Subgraph and Max-Weight (Colorful)
//! Independent Set on chordal and cluster⋈chordal graphs, recognizers for the
//! surrounding graph-class hierarchy, and generators for multicolored-clique
//! gadget instances.
//!
//! The solving pipeline is layered:
//!
//! * [`colorful_dp`] solves Max-Weight Colorful Independent Set by dynamic
//!   programming over a tree decomposition whose bags have bounded
//!   independence number (clique trees of chordal graphs have bound one).
//! * [`color_coding::mwis_cluster_chordal`] reduces size-bounded Max-Weight
//!   Independent Set on a cluster⋈chordal graph to the colorful problem by
//!   coloring whole clusters.
//! * [`color_coding::mwccs_from_mwis`] reduces Max-Weight c-Colorable Subgraph
//!   to size-bounded independent set on each color class of a vertex coloring.
//!
//! [`oracle`] holds brute-force reference solvers used to validate all of the
//! above.

pub mod color_coding;
pub mod colorful_dp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod recognition;
pub mod tree_decomp;

pub use error::{Error, Result};
pub use graph::{Graph, Solution, Vertex, VertexSet, Weight, WeightedInstance};
