//! Closed-form domination values for paths and cycles, the piecewise bounds
//! on them, and explicit hop dominating sets for paths, cycles and cycle
//! amalgams.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::amalgam_offsets;
use crate::graph::{Graph, VertexSet};
use crate::solver::is_hop_dominating;

/// Exact rational used for every bound comparison.
pub type Rational = Ratio<i64>;

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

/// γ(C_n) = ⌈n/3⌉.
pub fn gamma_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(domain(format!("cycle order must be >= 3, got {n}")));
    }
    Ok(n.div_ceil(3))
}

/// γ_h(P_n) = ⌈⌊n/2⌋/3⌉ + ⌈⌈n/2⌉/3⌉.
pub fn gamma_h_path(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(domain("path order must be >= 1".into()));
    }
    Ok((n / 2).div_ceil(3) + n.div_ceil(2).div_ceil(3))
}

/// γ_h(C_n): 2⌈n/6⌉ for even n, ⌈n/3⌉ for odd n >= 5.
///
/// The triangle C₃ has no pair at distance two, so every vertex must be
/// chosen and γ_h(C₃) = 3 rather than ⌈3/3⌉.
pub fn gamma_h_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(domain(format!("cycle order must be >= 3, got {n}")));
    }
    Ok(match n {
        3 => 3,
        _ if n.is_multiple_of(2) => 2 * n.div_ceil(6),
        _ => n.div_ceil(3),
    })
}

fn fifths(n: usize, extra: i64) -> Rational {
    Ratio::new(2 * n as i64 + extra, 5)
}

/// Piecewise upper bound on γ_h(P_n).
pub fn path_bound(n: usize) -> Result<Rational> {
    Ok(match n {
        0 => return Err(domain("path order must be >= 1".into())),
        2 => fifths(n, 6),
        1 | 3 | 8 => fifths(n, 4),
        4 | 7 | 9 | 14 => fifths(n, 2),
        _ => fifths(n, 0),
    })
}

/// Piecewise upper bound on γ_h(C_n), n >= 4.
pub fn cycle_bound(n: usize) -> Result<Rational> {
    Ok(match n {
        0..=3 => return Err(domain(format!("cycle order must be >= 4, got {n}"))),
        4 | 7 | 14 => fifths(n, 2),
        8 => fifths(n, 4),
        _ => fifths(n, 0),
    })
}

/// (1 + ln δ)/δ · n.
pub fn ln_delta_bound(n: usize, delta: usize) -> Result<f64> {
    if delta < 1 {
        return Err(domain("minimum degree must be >= 1".into()));
    }
    let d = delta as f64;
    Ok((1.0 + d.ln()) / d * n as f64)
}

/// A rational that is at least [`ln_delta_bound`]: the float value rounded
/// up to a multiple of 1e-9, plus 1e-9 to absorb floating-point error.
pub fn ln_delta_bound_upper(n: usize, delta: usize) -> Result<Rational> {
    const SCALE: i64 = 1_000_000_000;
    let v = ln_delta_bound(n, delta)?;
    Ok(Ratio::new((v * SCALE as f64).ceil() as i64 + 1, SCALE))
}

/// Every-third-vertex dominating set of a path with `len` vertices, as positions.
fn path_domination_positions(len: usize) -> impl Iterator<Item = usize> {
    (0..len.div_ceil(3)).map(move |k| (3 * k + 1).min(len - 1))
}

/// Optimal hop dominating set of P_n (vertices 0..n in path order): each
/// parity class is a path in the two-step graph and gets dominated separately.
pub fn build_hds_path(n: usize) -> Result<VertexSet> {
    if n < 1 {
        return Err(domain("path order must be >= 1".into()));
    }
    let evens = path_domination_positions(n.div_ceil(2)).map(|p| 2 * p);
    let odds = path_domination_positions(n / 2).map(|p| 2 * p + 1);
    VertexSet::from_vertices(n, evens.chain(odds))
}

/// Hop dominating set of C_n (vertices 0..n in cycle order) containing 0.
///
/// Without `want_adjacent_pair` the set is optimal. With it, the set also
/// contains the adjacent pair 0, 1 and has at most (2n+2)/5 vertices; that
/// is impossible for n = 8.
pub fn build_hds_cycle(n: usize, want_adjacent_pair: bool) -> Result<VertexSet> {
    if n < 4 {
        return Err(domain(format!("cycle order must be >= 4, got {n}")));
    }
    if want_adjacent_pair && n == 8 {
        return Err(domain("C8 has no small hop dominating set with an adjacent pair".into()));
    }
    // Even n: the two-step graph is two cycles on the parity classes; taking
    // every third vertex of each, starting at 0 and 1, puts i ≡ 0, 1 (mod 6)
    // in the set. Odd n with the pair requested uses the same residues.
    let set = if n.is_multiple_of(2) || want_adjacent_pair {
        VertexSet::from_vertices(n, (0..n).filter(|i| i % 6 <= 1))?
    } else {
        // odd n: the two-step graph is the single cycle 0, 2, 4, ..., 1, 3, ...
        VertexSet::from_vertices(n, (0..n.div_ceil(3)).map(|k| 6 * k % n))?
    };
    if want_adjacent_pair && !is_hop_dominating(&Graph::cycle(n)?, &set) {
        return Err(Error::Reconstruction(format!("adjacent-pair set for C{n}")));
    }
    Ok(set)
}

/// Hop dominating set of the cycle amalgam C(a₁, …, a_m) containing the
/// center (vertex 0), with at most ⌊2n/5⌋ vertices.
///
/// Vertex numbering follows [`crate::families::amalgam`]. All-8 amalgams use
/// the distance-4 vertices, one neighbor of each, the center and one center
/// neighbor. Otherwise the largest cycle that is not an 8-cycle is covered
/// by an adjacent-pair cycle set through the center and the rest recurses.
pub fn build_hds_amalgam(lengths: &[usize]) -> Result<VertexSet> {
    if lengths.is_empty() {
        return Err(domain("amalgam needs at least one cycle".into()));
    }
    if let Some(&a) = lengths.iter().find(|&&a| a < 4) {
        return Err(domain(format!("amalgam cycle length {a} < 4 (must be triangle-free)")));
    }
    if lengths.len() == 1 && matches!(lengths[0], 4 | 7 | 8 | 14) {
        return Err(Error::Exceptional(format!("C{}", lengths[0])));
    }
    let (n, offsets) = amalgam_offsets(lengths)?;
    let layout = Layout { lengths, offsets: &offsets };
    let active: Vec<usize> = (0..lengths.len()).collect();
    let bits = layout.hop_set(&active)?;
    VertexSet::from_bits(n, bits)
}

struct Layout<'a> {
    lengths: &'a [usize],
    offsets: &'a [usize],
}

impl Layout<'_> {
    /// Vertex at position `t` along cycle `i`, position 0 being the center.
    fn vertex(&self, i: usize, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.offsets[i] + t
        }
    }

    fn map_cycle_set(&self, i: usize, set: &VertexSet) -> u128 {
        set.iter().fold(0u128, |acc, t| acc | 1 << self.vertex(i, t))
    }

    fn hop_set(&self, active: &[usize]) -> Result<u128> {
        if let [i] = active {
            return Ok(self.map_cycle_set(*i, &build_hds_cycle(self.lengths[*i], false)?));
        }
        if active.iter().all(|&i| self.lengths[i] == 8) {
            let mut bits = 1u128 | 1 << self.vertex(active[0], 1);
            for &i in active {
                bits |= 1 << self.vertex(i, 4) | 1 << self.vertex(i, 3);
            }
            return Ok(bits);
        }
        let peeled = *active
            .iter()
            .filter(|&&i| self.lengths[i] != 8)
            .max_by_key(|&&i| (self.lengths[i], std::cmp::Reverse(i)))
            .expect("some cycle is not an 8-cycle");
        let pair_set = self.map_cycle_set(peeled, &build_hds_cycle(self.lengths[peeled], true)?);
        let rest: Vec<usize> = active.iter().copied().filter(|&i| i != peeled).collect();
        if let [r] = rest[..] {
            let h = self.lengths[r];
            if h == 4 {
                return Ok(pair_set);
            }
            if matches!(h, 7 | 8 | 14) {
                // the rest cycle minus the center, its neighbors and its
                // 2-step neighbors is the path on positions 3..=h-3
                let path = build_hds_path(h - 5)?;
                let bits = path.iter().fold(0u128, |acc, j| acc | 1 << self.vertex(r, 3 + j));
                return Ok(pair_set | bits);
            }
        }
        Ok(self.hop_set(&rest)? | pair_set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub floor_two_fifths: usize,
    pub gamma_h_cycle: usize,
}

/// γ_h(C_n) against ⌊2n/5⌋ for 4 <= n <= 14.
pub fn cycle_table() -> Vec<TableRow> {
    (4..=14)
        .map(|n| TableRow {
            n,
            floor_two_fifths: 2 * n / 5,
            gamma_h_cycle: gamma_h_cycle(n).expect("n >= 4"),
        })
        .collect()
}
