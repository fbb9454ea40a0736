//! Exact hop domination, domination and total domination on small graphs.
//!
//! Graphs have at most 126 vertices and are exchanged as graph6 strings.

pub mod closed_forms;
pub mod dist2;
pub mod error;
pub mod families;
pub mod graph;
pub mod reductions;
pub mod solver;
pub mod verify;

pub use error::{Error, Graph6Error, Result};
pub use graph::{Graph, VertexSet};
pub use solver::{solve, Kind, SolveResult};
