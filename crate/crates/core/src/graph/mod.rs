//! Simple undirected graphs with at most 126 vertices, stored as one `u128`
//! adjacency row per vertex.

mod canon;
mod graph6;
mod hamilton;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, is_isomorphic};
pub use graph6::{parse_graph6, write_graph6};
pub use hamilton::{hamiltonian_cycle, hamiltonian_path, DEFAULT_HAMILTON_BUDGET};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 126;

/// Iterate over the indices of the set bits of `bits`, lowest first.
#[inline]
pub fn bit_iter(mut bits: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// A subset of the vertices of a graph of order `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    n: usize,
    bits: u128,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        Self { n, bits: full_mask(n) }
    }

    /// Build from raw bits; bits at positions `>= n` are rejected.
    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        if bits & !full_mask(n) != 0 {
            let vertex = 127 - bits.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        Ok(Self { n, bits })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.bits |= 1 << v;
        }
        Ok(s)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range");
        self.bits |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.bits &= !(1 << v);
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        bit_iter(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Map this set through `map` (old index -> new index) into a set of order `n`.
    pub fn map_into(&self, n: usize, map: &[usize]) -> Result<VertexSet> {
        VertexSet::from_vertices(n, self.iter().map(|v| map[v]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Immutable simple undirected graph.
///
/// Invariants: adjacency is symmetric, there are no loops and every row only
/// uses bits below `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

/// A connected component together with the original labels of its vertices.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the label in the parent graph of component vertex `i`.
    pub vertices: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build from adjacency rows, checking symmetry, loops and range.
    pub fn from_adjacency(rows: Vec<u128>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mask = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row >> v & 1 == 1 {
                return Err(Error::InvalidEdge(v, v));
            }
            for u in bit_iter(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::InvalidEdge(v, u));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let mask = full_mask(n);
        for v in 0..n {
            g.adj[v] = mask & !(1 << v);
        }
        Ok(g)
    }

    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        let mut g = Self::empty(s + t)?;
        for u in 0..s {
            for v in s..s + t {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency row of `v` as raw bits.
    #[inline]
    pub fn row(&self, v: usize) -> u128 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u128] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet { n: self.n, bits: self.adj[v] }
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet { n: self.n, bits: self.adj[v] | 1 << v }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bit_iter(self.adj[u] >> u >> 1).map(move |k| (u, u + 1 + k)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    /// Vertices reachable from `v`, as raw bits.
    pub fn reach(&self, v: usize) -> u128 {
        let mut seen = 1u128 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in bit_iter(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0) == full_mask(self.n)
    }

    /// Vertex classes of the connected components, ordered by smallest vertex.
    pub fn component_sets(&self) -> Vec<VertexSet> {
        let mut left = full_mask(self.n);
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.reach(v);
            left &= !c;
            out.push(VertexSet { n: self.n, bits: c });
        }
        out
    }

    pub fn components(&self) -> Vec<Component> {
        self.component_sets()
            .into_iter()
            .map(|s| {
                let (graph, vertices) = self.induced_subgraph(&s).expect("component is non-empty");
                Component { graph, vertices }
            })
            .collect()
    }

    /// Subgraph induced by `keep`; the second value maps new labels to old ones.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        let vertices = keep.to_vec();
        if vertices.is_empty() {
            return Err(Error::OrderOutOfRange(0));
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| bit_iter(self.adj[v] & keep.bits).fold(0u128, |acc, u| acc | 1 << index[u]))
            .collect();
        Ok((Graph { n: vertices.len(), adj }, vertices))
    }

    /// `self - v`; the second value maps new labels to old ones.
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut keep = self.vertex_set();
        keep.remove(v);
        self.induced_subgraph(&keep)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge(u, v));
        }
        let mut g = self.clone();
        g.delete_edge(u, v);
        Ok(g)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidEdge(u, v));
        }
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    /// Graph with one extra vertex `n` adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: u128) -> Result<Graph> {
        if self.n >= MAX_ORDER {
            return Err(Error::OrderOutOfRange(self.n + 1));
        }
        if neighbors & !full_mask(self.n) != 0 {
            return Err(Error::InvalidEdge(self.n, 127 - neighbors.leading_zeros() as usize));
        }
        let mut adj = self.adj.clone();
        for u in bit_iter(neighbors) {
            adj[u] |= 1 << self.n;
        }
        adj.push(neighbors);
        Ok(Graph { n: self.n + 1, adj })
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u128; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bit_iter(self.adj[v]).fold(0, |acc, u| acc | 1 << perm[u]);
        }
        Graph { n: self.n, adj }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// BFS distances from `v`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in bit_iter(self.adj[u]) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] >= b) {
                    break;
                }
                for w in bit_iter(self.adj[u]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn to_graph6(&self) -> String {
        write_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", write_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_graph6(s)?)
    }
}
