//! Isomorph-free generation by canonical vertex augmentation.
//!
//! Level k holds one canonically labeled representative per isomorphism
//! class on k vertices. A child `P + v` of a level-k parent `P` is kept iff
//! deleting the vertex in the last canonical position of the child leaves a
//! graph isomorphic to `P`; children of one parent are deduplicated locally.
//! Hereditary filters (triangle-free, girth) prune every level.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit_iter, canonical_form, canonical_labeling, Graph};

/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUM_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumFilters {
    pub connected: bool,
    pub triangle_free: bool,
    pub min_degree: usize,
    /// Keep graphs whose girth is at least this (acyclic graphs always pass).
    pub girth_at_least: Option<usize>,
}

impl EnumFilters {
    fn hereditary_ok(&self, g: &Graph) -> bool {
        match self.girth_at_least {
            Some(k) if k > 3 => g.girth().is_none_or(|c| c >= k),
            _ => !self.triangle_free || g.is_triangle_free(),
        }
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.connected || g.is_connected()) && g.min_degree() >= self.min_degree && self.hereditary_ok(g)
    }

    fn wants_independent_neighborhoods(&self) -> bool {
        self.triangle_free || self.girth_at_least.is_some_and(|k| k > 3)
    }
}

/// One canonically labeled graph per isomorphism class on `n` vertices
/// passing `filters`, sorted by graph6 string.
pub fn enumerate_graphs(n: usize, filters: &EnumFilters) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUM_ORDER).contains(&n) {
        return Err(Error::SizeGuard { n, limit: MAX_ENUM_ORDER });
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        level = level.par_iter().flat_map_iter(|p| children(p, filters)).collect();
    }
    let mut out: Vec<Graph> = level.into_iter().filter(|g| filters.accepts(g)).collect();
    out.sort_by_cached_key(|g| g.to_graph6());
    Ok(out)
}

fn children(parent: &Graph, filters: &EnumFilters) -> Vec<Graph> {
    let k = parent.n();
    let parent_form = parent.to_graph6();
    let independent = filters.wants_independent_neighborhoods();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in 0u128..1 << k {
        if independent && bit_iter(s).any(|u| parent.row(u) & s != 0) {
            continue;
        }
        let child = parent.with_vertex(s).expect("order within range");
        if !filters.hereditary_ok(&child) {
            continue;
        }
        let perm = canonical_labeling(&child);
        let last = perm.iter().position(|&p| p == k).expect("perm is a bijection");
        if last != k {
            let (rest, _) = child.remove_vertex(last).expect("vertex in range");
            if canonical_form(&rest) != parent_form {
                continue;
            }
        }
        let canon = child.relabel(&perm);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}
