//! Star graphs `S_n`, their hierarchical decompositions, explicit k-super
//! vertex and edge cuts, and exact search oracles for k-super connectivity.

pub mod cli;
pub mod cuts;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod perm;
pub mod subgraphs;

pub use error::{Error, Result};
pub use graph::{AdjacencyMode, Edge, EdgeSet, StarGraph, VertexId, VertexSet};
pub use perm::Permutation;
