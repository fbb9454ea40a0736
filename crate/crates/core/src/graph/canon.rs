//! Canonical labeling by partition refinement and individualization.
//!
//! Every leaf of the search tree is a discrete ordered partition, read as a
//! relabeling. The canonical labeling is the leaf whose relabeled adjacency
//! bit string (graph6 column order) is lexicographically smallest. Leaves
//! that reproduce the current best graph yield automorphisms, which prune
//! sibling branches lying in the same orbit of the pointwise stabilizer of
//! the individualized prefix.

use super::{bit_iter, full_mask, write_graph6, Graph};

/// Canonical relabeling of `g`: vertex `v` becomes `perm[v]`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let mut search = Search {
        g,
        best_key: None,
        best_perm: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut cells = vec![full_mask(g.n())];
    refine(g, &mut cells);
    search.descend(cells, &mut Vec::new());
    search.best_perm
}

/// Labeling-invariant string for `g`: the graph6 encoding of its canonical relabeling.
pub fn canonical_form(g: &Graph) -> String {
    write_graph6(&g.relabel(&canonical_labeling(g)))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<_> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<_> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && g.relabel(&canonical_labeling(g)) == h.relabel(&canonical_labeling(h))
}

struct Search<'a> {
    g: &'a Graph,
    best_key: Option<Vec<u128>>,
    best_perm: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u128>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for v in bit_iter(cells[target]) {
            if !explored.is_empty() && self.same_orbit(prefix, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u128 << v);
            child.push(cells[target] & !(1u128 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[u128]) {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (pos, &c) in cells.iter().enumerate() {
            perm[c.trailing_zeros() as usize] = pos;
        }
        let relabeled = self.g.relabel(&perm);
        // column j holds x(0,j), x(1,j), ... with x(0,j) most significant
        let key: Vec<u128> = (1..n)
            .map(|j| (relabeled.row(j) & full_mask(j)).reverse_bits())
            .collect();
        match &self.best_key {
            Some(best) if key > *best => {}
            Some(best) if key == *best => {
                let mut inverse = vec![0; n];
                for (v, &p) in self.best_perm.iter().enumerate() {
                    inverse[p] = v;
                }
                let auto: Vec<usize> = perm.iter().map(|&p| inverse[p]).collect();
                if auto.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(auto);
                }
            }
            _ => {
                self.best_key = Some(key);
                self.best_perm = perm;
            }
        }
    }

    /// Is `v` in the orbit of one of `explored` under the known automorphisms
    /// fixing `prefix` pointwise?
    fn same_orbit(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.automorphisms {
            if prefix.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in auto.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// Refine an ordered partition to the coarsest equitable refinement,
/// splitting cells by neighbor counts into splitters in ascending count order.
fn refine(g: &Graph, cells: &mut Vec<u128>) {
    let mut splitter = 0;
    while splitter < cells.len() {
        let w = cells[splitter];
        let mut next: Vec<u128> = Vec::with_capacity(cells.len() + 2);
        for &c in cells.iter() {
            if c.count_ones() == 1 {
                next.push(c);
                continue;
            }
            let mut buckets: Vec<(u32, u128)> = Vec::new();
            for v in bit_iter(c) {
                let k = (g.row(v) & w).count_ones();
                match buckets.iter_mut().find(|(count, _)| *count == k) {
                    Some((_, bits)) => *bits |= 1 << v,
                    None => buckets.push((k, 1 << v)),
                }
            }
            buckets.sort_unstable_by_key(|&(k, _)| k);
            next.extend(buckets.into_iter().map(|(_, bits)| bits));
        }
        if next.len() != cells.len() {
            *cells = next;
            splitter = 0;
        } else {
            splitter += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = vec![];
        rec(&mut vec![], &mut vec![false; n], &mut out);
        out
    }

    /// Minimum graph6 string over all relabelings.
    fn brute_force_form(g: &Graph, perms: &[Vec<usize>]) -> String {
        perms.iter().map(|p| write_graph6(&g.relabel(p))).min().unwrap()
    }

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> =
            (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    #[test]
    fn examples() {
        let c4 = Graph::cycle(4).unwrap();
        let c4b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4), canonical_form(&c4b));
        assert!(is_isomorphic(&Graph::complete_bipartite(2, 2).unwrap(), &c4));
        let two_k3 = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        assert!(!is_isomorphic(&Graph::cycle(6).unwrap(), &two_k3));
    }

    /// Canonical forms induce the same classes as the all-permutations
    /// minimum, and are invariant under every relabeling, for all n <= 6.
    #[test]
    fn agrees_with_permutation_oracle() {
        for n in 1..=6 {
            let perms = permutations(n);
            let mut oracle_to_canon: HashMap<String, String> = HashMap::new();
            let mut canon_to_oracle: HashMap<String, String> = HashMap::new();
            for g in all_labeled(n) {
                let oracle = brute_force_form(&g, &perms);
                let canon = canonical_form(&g);
                assert_eq!(oracle_to_canon.entry(oracle.clone()).or_insert(canon.clone()), &canon);
                assert_eq!(canon_to_oracle.entry(canon).or_insert(oracle.clone()), &oracle);
            }
            let expected = [1, 2, 4, 11, 34, 156][n - 1];
            assert_eq!(oracle_to_canon.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn symmetric_graphs_terminate() {
        let e = Graph::empty(12).unwrap();
        assert_eq!(canonical_form(&e), write_graph6(&e));
        let k = Graph::complete_bipartite(6, 6).unwrap();
        let forms: HashSet<_> = [k.clone(), k.relabel(&[11, 0, 10, 1, 9, 2, 8, 3, 7, 4, 6, 5])]
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(forms.len(), 1);
    }
}
