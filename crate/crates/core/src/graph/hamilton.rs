use super::{bit_iter, full_mask, Graph};
use crate::error::{Error, Result};

pub const DEFAULT_HAMILTON_BUDGET: u64 = 10_000_000;

/// A Hamiltonian path as a vertex sequence, `Ok(None)` if none exists.
pub fn hamiltonian_path(g: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n == 1 {
        return Ok(Some(vec![0]));
    }
    if !g.is_connected() {
        return Ok(None);
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() > 2 {
        return Ok(None);
    }
    let starts: Vec<usize> = if leaves.is_empty() { (0..n).collect() } else { vec![leaves[0]] };
    let mut walk = Walk { g, budget, nodes: 0, path: Vec::with_capacity(n), closed: false };
    for s in starts {
        if walk.extend(s, 1 << s)? {
            return Ok(Some(walk.path));
        }
    }
    Ok(None)
}

/// A Hamiltonian cycle as a vertex sequence starting at 0 (the closing edge
/// back to 0 is implied), `Ok(None)` if none exists.
pub fn hamiltonian_cycle(g: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || !g.is_connected() {
        return Ok(None);
    }
    let mut walk = Walk { g, budget, nodes: 0, path: Vec::with_capacity(n), closed: true };
    if walk.extend(0, 1)? {
        return Ok(Some(walk.path));
    }
    Ok(None)
}

struct Walk<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    path: Vec<usize>,
    closed: bool,
}

impl Walk<'_> {
    fn extend(&mut self, v: usize, visited: u128) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        self.path.push(v);
        let n = self.g.n();
        if visited == full_mask(n) {
            if !self.closed || self.g.has_edge(v, self.path[0]) {
                return Ok(true);
            }
            self.path.pop();
            return Ok(false);
        }
        let free = full_mask(n) & !visited;
        // an unvisited vertex that can no longer be entered and left is a dead end
        let ends = 1u128 << v | if self.closed { 1u128 << self.path[0] } else { 0 };
        let mut dead_ends = 0;
        for u in bit_iter(free) {
            let avail = (self.g.row(u) & (free | ends)).count_ones();
            if avail == 0 {
                self.path.pop();
                return Ok(false);
            }
            if avail == 1 {
                dead_ends += 1;
            }
        }
        if dead_ends > if self.closed { 0 } else { 1 } {
            self.path.pop();
            return Ok(false);
        }
        for w in bit_iter(self.g.row(v) & free) {
            if self.extend(w, visited | 1 << w)? {
                return Ok(true);
            }
        }
        self.path.pop();
        Ok(false)
    }
}
