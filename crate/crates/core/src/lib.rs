//! Claw-free graphs, line graphs of multigraphs, multigraph cores and trail
//! search: the machinery for checking hamiltonian-connectedness of 3-connected
//! claw-free graphs with small domination number, and for building the
//! hamiltonian paths constructively from a dominating set.

pub mod bits;
pub mod constructions;
pub mod coremap;
mod flow;
pub mod invariants;
pub mod linegraph;
pub mod multigraph;
pub mod reduction;
pub mod trails;

pub use multigraph::{EdgeId, GraphError, Multigraph, SimpleGraph, VertexId};
