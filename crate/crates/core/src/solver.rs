//! Minimum dominating, total dominating and hop dominating sets.
//!
//! All three are set-cover instances over vertex bitsets: choosing `v`
//! covers `N[v]` (domination), `N(v)` (total domination) or `N*[v]`, the
//! closed neighborhood in the two-step graph (hop domination). The cover
//! problem is solved per connected component of the covering relation by a
//! depth-first branch and bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist2::{n2_bits, two_step_graph};
use crate::error::{Error, Result};
use crate::graph::{bit_iter, full_mask, Graph, VertexSet};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest order accepted by [`brute_force_min`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dom,
    Total,
    Hop,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dom => "dom",
            Kind::Total => "total",
            Kind::Hop => "hop",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dom" | "gamma" => Ok(Kind::Dom),
            "total" | "gamma_t" => Ok(Kind::Total),
            "hop" | "gamma_h" => Ok(Kind::Hop),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub kind: Kind,
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    /// False when the node budget ran out; `value` is then an upper bound.
    pub optimal: bool,
}

pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    if s.order() != g.n() {
        return false;
    }
    let covered = s.iter().fold(s.bits(), |acc, v| acc | g.row(v));
    covered == full_mask(g.n())
}

pub fn is_total_dominating(g: &Graph, s: &VertexSet) -> bool {
    if s.order() != g.n() {
        return false;
    }
    let covered = s.iter().fold(0u128, |acc, v| acc | g.row(v));
    covered == full_mask(g.n())
}

/// Every vertex outside `s` has a vertex of `s` at distance exactly two.
pub fn is_hop_dominating(g: &Graph, s: &VertexSet) -> bool {
    s.order() == g.n() && (0..g.n()).all(|v| s.contains(v) || n2_bits(g, v) & s.bits() != 0)
}

pub fn is_valid(g: &Graph, kind: Kind, s: &VertexSet) -> bool {
    match kind {
        Kind::Dom => is_dominating(g, s),
        Kind::Total => is_total_dominating(g, s),
        Kind::Hop => is_hop_dominating(g, s),
    }
}

pub fn solve(g: &Graph, kind: Kind, budget: u64) -> Result<SolveResult> {
    match kind {
        Kind::Dom => min_dominating_set(g, budget),
        Kind::Total => min_total_dominating_set(g, budget),
        Kind::Hop => min_hop_dominating_set(g, budget),
    }
}

pub fn min_dominating_set(g: &Graph, budget: u64) -> Result<SolveResult> {
    let cover: Vec<u128> = (0..g.n()).map(|v| g.row(v) | 1 << v).collect();
    Ok(solve_cover(g.n(), Kind::Dom, &cover, budget))
}

pub fn min_total_dominating_set(g: &Graph, budget: u64) -> Result<SolveResult> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let cover: Vec<u128> = g.rows().to_vec();
    Ok(solve_cover(g.n(), Kind::Total, &cover, budget))
}

/// Minimum hop dominating set, found as a minimum dominating set of the
/// two-step graph, one connected component at a time.
pub fn min_hop_dominating_set(g: &Graph, budget: u64) -> Result<SolveResult> {
    let star = two_step_graph(g);
    let cover: Vec<u128> = (0..g.n()).map(|v| star.row(v) | 1 << v).collect();
    Ok(solve_cover(g.n(), Kind::Hop, &cover, budget))
}

/// Exact optimum by testing subsets in order of increasing size.
pub fn brute_force_min(g: &Graph, kind: Kind) -> Result<SolveResult> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard { n, limit: BRUTE_FORCE_LIMIT });
    }
    if kind == Kind::Total {
        if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
            return Err(Error::IsolatedVertex(v));
        }
    }
    let mut tested = 0u64;
    for k in 0..=n {
        let mut mask: u64 = (1u64 << k) - 1;
        let limit = 1u64 << n;
        while mask < limit {
            tested += 1;
            let s = VertexSet::from_bits(n, mask as u128)?;
            if is_valid(g, kind, &s) {
                return Ok(SolveResult { kind, value: k, witness: s, nodes_explored: tested, optimal: true });
            }
            if k == 0 {
                break;
            }
            // next subset of the same size (Gosper)
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set is valid for every kind on graphs without isolated vertices")
}

/// Solve the cover instance where choosing `v` covers `cover[v]`; every
/// vertex is a target and every vertex is a candidate.
fn solve_cover(n: usize, kind: Kind, cover: &[u128], budget: u64) -> SolveResult {
    let mut candidates_of = vec![0u128; n];
    for (v, &c) in cover.iter().enumerate() {
        for u in bit_iter(c) {
            candidates_of[u] |= 1 << v;
        }
    }
    // components of the symmetric closure of the cover relation
    let mut link = vec![0u128; n];
    for v in 0..n {
        link[v] = cover[v] | candidates_of[v] | 1 << v;
    }
    let mut left = full_mask(n);
    let mut witness = 0u128;
    let mut nodes = 0u64;
    let mut optimal = true;
    while left != 0 {
        let root = left.trailing_zeros() as usize;
        let mut comp = 1u128 << root;
        let mut frontier = comp;
        while frontier != 0 {
            let next = bit_iter(frontier).fold(0u128, |acc, u| acc | link[u]);
            frontier = next & !comp;
            comp |= next;
        }
        left &= !comp;
        let mut bnb = BranchAndBound::new(cover, &candidates_of, comp, budget.saturating_sub(nodes));
        bnb.run();
        nodes += bnb.nodes;
        optimal &= !bnb.aborted;
        witness |= bnb.best_set;
    }
    let witness = VertexSet::from_bits(n, witness).expect("witness within range");
    SolveResult { kind, value: witness.len(), witness, nodes_explored: nodes, optimal }
}

struct BranchAndBound<'a> {
    cover: &'a [u128],
    candidates_of: &'a [u128],
    targets: u128,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best_size: usize,
    best_set: u128,
}

impl<'a> BranchAndBound<'a> {
    fn new(cover: &'a [u128], candidates_of: &'a [u128], targets: u128, budget: u64) -> Self {
        let mut bnb = Self {
            cover,
            candidates_of,
            targets,
            budget,
            nodes: 0,
            aborted: false,
            best_size: usize::MAX,
            best_set: 0,
        };
        bnb.best_set = bnb.greedy(targets);
        bnb.best_size = bnb.best_set.count_ones() as usize;
        bnb
    }

    /// Repeatedly take the vertex covering most uncovered targets, lowest index on ties.
    fn greedy(&self, targets: u128) -> u128 {
        let mut uncovered = targets;
        let mut chosen = 0u128;
        while uncovered != 0 {
            let pool = bit_iter(uncovered).fold(0u128, |acc, u| acc | self.candidates_of[u]);
            let v = bit_iter(pool)
                .max_by_key(|&v| ((self.cover[v] & uncovered).count_ones(), std::cmp::Reverse(v)))
                .expect("every target has a candidate");
            chosen |= 1 << v;
            uncovered &= !self.cover[v];
        }
        chosen
    }

    fn run(&mut self) {
        let targets = self.targets;
        self.branch(targets, 0, 0, 0);
    }

    fn branch(&mut self, uncovered: u128, chosen: u128, excluded: u128, size: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if uncovered == 0 {
            if size < self.best_size {
                self.best_size = size;
                self.best_set = chosen;
            }
            return;
        }
        if size + self.lower_bound(uncovered, excluded) >= self.best_size {
            return;
        }
        // uncovered target with the fewest admissible candidates
        let mut target = usize::MAX;
        let mut fewest = u32::MAX;
        for u in bit_iter(uncovered) {
            let k = (self.candidates_of[u] & !excluded).count_ones();
            if k < fewest {
                fewest = k;
                target = u;
            }
        }
        if fewest == 0 {
            return;
        }
        let mut options: Vec<usize> = bit_iter(self.candidates_of[target] & !excluded).collect();
        options.sort_by_key(|&v| (std::cmp::Reverse((self.cover[v] & uncovered).count_ones()), v));
        let mut excluded = excluded;
        for v in options {
            self.branch(uncovered & !self.cover[v], chosen | 1 << v, excluded, size + 1);
            if self.aborted {
                return;
            }
            excluded |= 1 << v;
        }
    }

    /// max(ceil(uncovered / best coverage), size of a greedy packing of
    /// targets with pairwise disjoint candidate sets).
    fn lower_bound(&self, uncovered: u128, excluded: u128) -> usize {
        let pool = bit_iter(uncovered).fold(0u128, |acc, u| acc | self.candidates_of[u]) & !excluded;
        let best_cover = bit_iter(pool).map(|v| (self.cover[v] & uncovered).count_ones()).max().unwrap_or(0);
        if best_cover == 0 {
            return usize::MAX / 2;
        }
        let ratio = (uncovered.count_ones()).div_ceil(best_cover) as usize;
        let mut used = 0u128;
        let mut packing = 0;
        for u in bit_iter(uncovered) {
            let c = self.candidates_of[u] & !excluded;
            if c & used == 0 {
                used |= c;
                packing += 1;
            }
        }
        ratio.max(packing)
    }
}
