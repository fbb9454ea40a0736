//! Twin reduction, pendant cycles, cut edges and the 2n/5 certificate pipeline.

use std::fmt;

use serde::Serialize;

use crate::closed_forms::{build_hds_amalgam, build_hds_cycle};
use crate::dist2::two_step_graph;
use crate::error::{Error, Result};
use crate::families::{match_exceptional, ExceptionalId};
use crate::graph::{bit_iter, full_mask, Component, Graph, VertexSet};
use crate::solver::{is_hop_dominating, min_hop_dominating_set};

/// All pairs `(w, w')`, `w < w'`, with equal non-empty open neighborhoods.
pub fn find_twins(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for w in 0..g.n() {
        for x in w + 1..g.n() {
            if g.row(w) != 0 && g.row(w) == g.row(x) {
                out.push((w, x));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinReduction {
    pub graph: Graph,
    /// `map[i]` is the label in the input graph of vertex `i` of `graph`.
    pub map: Vec<usize>,
    /// The twin of the removed vertex.
    pub twin: usize,
}

/// `g - w` for a vertex `w` that has a twin. Every hop dominating set of the
/// result is one of `g`, so the hop domination number cannot go up.
pub fn reduce_twin(g: &Graph, w: usize) -> Result<TwinReduction> {
    if w >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
    }
    if !g.is_triangle_free() {
        return Err(Error::NotTriangleFree);
    }
    let twin = (0..g.n())
        .find(|&x| x != w && g.row(w) != 0 && g.row(x) == g.row(w))
        .ok_or(Error::NoTwin(w))?;
    let (graph, map) = g.remove_vertex(w)?;
    Ok(TwinReduction { graph, map, twin })
}

/// An induced cycle whose apex has degree at least 3 while every other
/// vertex, the rim, has degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PendantCycle {
    pub apex: usize,
    /// Rim vertices in cycle order, starting next to the apex.
    pub rim: Vec<usize>,
}

/// All pendant `k`-cycles, each reported once with `rim[0] < rim[k-2]`.
/// Empty for `k < 4`.
pub fn find_pendant_cycles(g: &Graph, k: usize) -> Vec<PendantCycle> {
    let mut out = Vec::new();
    if k < 4 {
        return out;
    }
    for apex in (0..g.n()).filter(|&v| g.degree(v) >= 3) {
        for first in bit_iter(g.row(apex)).filter(|&a| g.degree(a) == 2) {
            let mut rim = vec![first];
            let (mut prev, mut cur) = (apex, first);
            while rim.len() < k - 1 {
                let next = (g.row(cur) & !(1u128 << prev)).trailing_zeros() as usize;
                if next == apex || g.degree(next) != 2 {
                    break;
                }
                rim.push(next);
                (prev, cur) = (cur, next);
            }
            let closes = rim.len() == k - 1 && g.has_edge(cur, apex);
            if closes && rim[0] < rim[k - 2] {
                out.push(PendantCycle { apex, rim });
            }
        }
    }
    out
}

/// Rewrite a minimum hop dominating set so that every pendant 4-cycle has
/// its apex and a neighbor of its apex in the set. When the apex is missing,
/// the rim vertex opposite the apex must be in the set, and swapping the two
/// keeps the set hop dominating.
pub fn normalize_hds_pendant4(g: &Graph, s: &VertexSet, budget: u64) -> Result<VertexSet> {
    if !is_hop_dominating(g, s) {
        return Err(Error::NotHopDominating);
    }
    let optimum = min_hop_dominating_set(g, budget)?;
    if !optimum.optimal {
        return Err(Error::BudgetExceeded(budget));
    }
    if s.len() != optimum.value {
        return Err(Error::NotMinimum { size: s.len(), optimum: optimum.value });
    }
    let cycles = find_pendant_cycles(g, 4);
    let mut t = *s;
    for c in &cycles {
        if !t.contains(c.apex) {
            t.remove(c.rim[1]);
            t.insert(c.apex);
        }
    }
    let normalized = cycles.iter().all(|c| t.contains(c.apex) && g.row(c.apex) & t.bits() != 0);
    if t.len() != s.len() || !normalized || !is_hop_dominating(g, &t) {
        return Err(Error::Reconstruction("pendant 4-cycle normalization".into()));
    }
    Ok(t)
}

/// Bridges by low-link DFS, as `(u, v)` with `u < v`, sorted.
pub fn cut_edges(g: &Graph) -> Vec<(usize, usize)> {
    struct Dfs<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        out: Vec<(usize, usize)>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[v] = self.time;
            self.low[v] = self.time;
            for u in bit_iter(self.g.row(v)) {
                if Some(u) == parent {
                    continue;
                }
                if self.disc[u] == 0 {
                    self.visit(u, Some(v));
                    self.low[v] = self.low[v].min(self.low[u]);
                    if self.low[u] > self.disc[v] {
                        self.out.push((v.min(u), v.max(u)));
                    }
                } else {
                    self.low[v] = self.low[v].min(self.disc[u]);
                }
            }
        }
    }
    let n = g.n();
    let mut dfs = Dfs { g, disc: vec![0; n], low: vec![0; n], time: 0, out: Vec::new() };
    for v in 0..n {
        if dfs.disc[v] == 0 {
            dfs.visit(v, None);
        }
    }
    dfs.out.sort_unstable();
    dfs.out
}

/// The two sides of `g - uv` for a cut edge `uv`: the side containing `u`
/// first. Each comes with its map back to labels of `g`.
pub fn split_on_cut_edge(g: &Graph, u: usize, v: usize) -> Result<(Component, Component)> {
    let h = g.without_edge(u, v).map_err(|_| Error::NotCutEdge(u, v))?;
    let side_u = h.reach(u);
    if side_u >> v & 1 == 1 {
        return Err(Error::NotCutEdge(u, v));
    }
    let side_v = h.reach(v);
    let part = |bits: u128| -> Result<Component> {
        let (graph, vertices) = h.induced_subgraph(&VertexSet::from_bits(g.n(), bits)?)?;
        Ok(Component { graph, vertices })
    };
    Ok((part(side_u)?, part(side_v)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Twin,
    Structured,
    Greedy,
    Exact,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Twin => "twin",
            Stage::Structured => "structured",
            Stage::Greedy => "greedy",
            Stage::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub graph6: String,
    pub n: usize,
    /// ⌊2n/5⌋
    pub bound: usize,
    pub size: usize,
    pub witness: VertexSet,
    pub stage: Stage,
    pub twins_removed: usize,
}

/// Check the hypotheses under which a hop dominating set of size at most
/// 2n/5 is guaranteed to exist.
pub fn check_two_fifths_preconditions(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !g.is_triangle_free() {
        return Err(Error::HasTriangle);
    }
    if g.min_degree() < 2 {
        return Err(Error::MinDegreeTooSmall(g.min_degree()));
    }
    if g.n() < 4 {
        return Err(Error::TooSmall(g.n()));
    }
    if let Some(id) = match_exceptional(g, &ExceptionalId::HOP) {
        return Err(Error::Exceptional(id.to_string()));
    }
    Ok(())
}

/// A verified hop dominating set with at most ⌊2n/5⌋ vertices.
///
/// Twins are removed first. The reduced graph is then handled by the cycle
/// and amalgam constructions when it has that shape, else by greedy
/// domination of the two-step graph with 1-swap improvement, and finally by
/// the exact solver. Failing all of these is reported as
/// [`Error::SoundnessAlarm`].
pub fn certify_two_fifths(g: &Graph, budget: u64) -> Result<Certificate> {
    check_two_fifths_preconditions(g)?;
    let n = g.n();
    let bound = 2 * n / 5;

    let mut h = g.clone();
    let mut map: Vec<usize> = (0..n).collect();
    while let Some(&(_, w)) = find_twins(&h).first() {
        let r = reduce_twin(&h, w)?;
        map = r.map.iter().map(|&i| map[i]).collect();
        h = r.graph;
    }
    let twins_removed = n - h.n();

    let (local, stage) = if h.n() <= bound {
        (h.vertex_set(), Stage::Twin)
    } else if let Some(s) = structured(&h).filter(|s| s.len() <= bound) {
        (s, Stage::Structured)
    } else {
        let s = greedy_local_search(&h);
        if s.len() <= bound {
            (s, Stage::Greedy)
        } else {
            let exact = min_hop_dominating_set(&h, budget)?;
            if exact.value > bound {
                if !exact.optimal {
                    return Err(Error::BudgetExceeded(budget));
                }
                return Err(Error::SoundnessAlarm { bound, found: exact.value });
            }
            (exact.witness, Stage::Exact)
        }
    };
    let witness = local.map_into(n, &map)?;
    if !is_hop_dominating(g, &witness) || 5 * witness.len() > 2 * n {
        return Err(Error::SoundnessAlarm { bound, found: witness.len() });
    }
    Ok(Certificate {
        graph6: g.to_graph6(),
        n,
        bound,
        size: witness.len(),
        witness,
        stage,
        twins_removed,
    })
}

/// Cycle or cycle-amalgam constructions, if `h` has one of those shapes.
fn structured(h: &Graph) -> Option<VertexSet> {
    let n = h.n();
    let high: Vec<usize> = (0..n).filter(|&v| h.degree(v) != 2).collect();
    match high[..] {
        [] if h.is_connected() => {
            let order = walk_cycle(h, 0, h.row(0).trailing_zeros() as usize);
            let s = build_hds_cycle(n, false).ok()?;
            VertexSet::from_vertices(n, s.iter().map(|t| order[t])).ok()
        }
        [c] if h.degree(c) >= 4 && h.is_connected() => {
            let mut lengths = Vec::new();
            let mut labels = vec![c];
            let mut left = h.row(c);
            while left != 0 {
                let first = left.trailing_zeros() as usize;
                let cycle = walk_cycle(h, c, first);
                let last = *cycle.last()?;
                left &= !(1u128 << first | 1u128 << last);
                lengths.push(cycle.len());
                labels.extend_from_slice(&cycle[1..]);
            }
            let s = build_hds_amalgam(&lengths).ok()?;
            VertexSet::from_vertices(n, s.iter().map(|t| labels[t])).ok()
        }
        _ => None,
    }
}

/// Vertices of the cycle through `start` and its neighbor `next`, following
/// degree-2 vertices until the walk returns to `start`.
fn walk_cycle(h: &Graph, start: usize, next: usize) -> Vec<usize> {
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, next);
    while cur != start {
        order.push(cur);
        let step = (h.row(cur) & !(1u128 << prev)).trailing_zeros() as usize;
        (prev, cur) = (cur, step);
    }
    order
}

/// Greedy domination of the two-step graph (most newly covered vertices,
/// lowest index on ties), then up to 2n² attempted 1-swaps, each kept only
/// when it makes some vertex redundant.
fn greedy_local_search(h: &Graph) -> VertexSet {
    let n = h.n();
    let all = full_mask(n);
    let star = two_step_graph(h);
    let cover: Vec<u128> = (0..n).map(|v| star.row(v) | 1 << v).collect();
    let covered = |s: u128| bit_iter(s).fold(0u128, |acc, v| acc | cover[v]);

    let mut s = 0u128;
    let mut uncovered = all;
    while uncovered != 0 {
        let v = (0..n)
            .max_by_key(|&v| ((cover[v] & uncovered).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty graph");
        s |= 1 << v;
        uncovered &= !cover[v];
    }
    let prune = |mut s: u128| {
        for v in bit_iter(s) {
            if covered(s & !(1 << v)) == all {
                s &= !(1 << v);
            }
        }
        s
    };
    s = prune(s);

    let mut attempts = 0usize;
    let limit = 2 * n * n;
    'search: while attempts < limit {
        for u in bit_iter(s) {
            for v in bit_iter(all & !s) {
                attempts += 1;
                if attempts > limit {
                    break 'search;
                }
                let t = s & !(1 << u) | 1 << v;
                if covered(t) != all {
                    continue;
                }
                let pruned = prune(t);
                if pruned.count_ones() < s.count_ones() {
                    s = pruned;
                    continue 'search;
                }
            }
        }
        break;
    }
    VertexSet::from_bits(n, s).expect("subset of the vertex set")
}
