//! The two-step graph: same vertices, `uv` an edge iff `u` and `v` are
//! distinct, non-adjacent and share a neighbor.
//!
//! On any graph this is exactly the distance-2 relation, so hop domination
//! of `G` is ordinary domination of the two-step graph.

use crate::error::{Error, Result};
use crate::graph::{bit_iter, Graph, VertexSet};

/// 2-step neighbors of `v` as raw bits.
#[inline]
pub(crate) fn n2_bits(g: &Graph, v: usize) -> u128 {
    let reach = bit_iter(g.row(v)).fold(0u128, |acc, u| acc | g.row(u));
    reach & !g.row(v) & !(1u128 << v)
}

/// 2-step neighbors of `v`: non-adjacent vertices sharing a neighbor with `v`.
pub fn n2_neighbors(g: &Graph, v: usize) -> Result<VertexSet> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    VertexSet::from_bits(g.n(), n2_bits(g, v))
}

pub fn two_step_graph(g: &Graph) -> Graph {
    let rows = (0..g.n()).map(|v| n2_bits(g, v)).collect();
    Graph::from_adjacency(rows).expect("two-step relation is symmetric and loop-free")
}
