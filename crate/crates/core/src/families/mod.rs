//! Named graph families, the exceptional graphs, and small-graph enumeration.

mod enumerate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, parse_graph6, Graph, MAX_ORDER};
use crate::solver::{solve, Kind, DEFAULT_BUDGET};

pub use enumerate::{enumerate_graphs, EnumFilters, MAX_ENUM_ORDER};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Complete(usize),
    CompleteMinusEdge(usize),
    Amalgam(Vec<usize>),
    TightnessChain(usize),
    SubdividedStar(usize),
    Exceptional(ExceptionalId),
}

impl FamilySpec {
    /// Structural caveats that do not prevent generation.
    pub fn warnings(&self) -> Vec<String> {
        match self {
            FamilySpec::Amalgam(lengths) if lengths.contains(&3) => {
                vec!["amalgam contains a 3-cycle and is not triangle-free".to_string()]
            }
            _ => Vec::new(),
        }
    }

    /// Parse a family from command-line words such as `["amalgam", "4", "6"]`.
    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let Some((head, rest)) = words.split_first() else {
            return Err(Error::Unknown("empty family spec".into()));
        };
        let nums = || -> Result<Vec<usize>> {
            rest.iter()
                .map(|w| w.as_ref().parse::<usize>().map_err(|_| Error::Unknown(w.as_ref().to_string())))
                .collect()
        };
        let arity = |k: usize| -> Result<Vec<usize>> {
            let v = nums()?;
            if v.len() != k {
                return Err(Error::Domain(format!(
                    "{} takes {k} parameter(s), got {}",
                    head.as_ref(),
                    v.len()
                )));
            }
            Ok(v)
        };
        let spec = match head.as_ref().to_ascii_lowercase().as_str() {
            "path" => FamilySpec::Path(arity(1)?[0]),
            "cycle" => FamilySpec::Cycle(arity(1)?[0]),
            "complete-bipartite" => {
                let v = arity(2)?;
                FamilySpec::CompleteBipartite(v[0], v[1])
            }
            "complete" => FamilySpec::Complete(arity(1)?[0]),
            "complete-minus-edge" => FamilySpec::CompleteMinusEdge(arity(1)?[0]),
            "amalgam" => FamilySpec::Amalgam(nums()?),
            "tightness-chain" => FamilySpec::TightnessChain(arity(1)?[0]),
            "subdivided-star" => FamilySpec::SubdividedStar(arity(1)?[0]),
            "exceptional" => {
                if rest.len() != 1 {
                    return Err(Error::Domain("exceptional takes one id".into()));
                }
                FamilySpec::Exceptional(rest[0].as_ref().parse()?)
            }
            other => return Err(Error::Unknown(other.to_string())),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path {n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle {n}"),
            FamilySpec::CompleteBipartite(s, t) => write!(f, "complete-bipartite {s} {t}"),
            FamilySpec::Complete(n) => write!(f, "complete {n}"),
            FamilySpec::CompleteMinusEdge(n) => write!(f, "complete-minus-edge {n}"),
            FamilySpec::Amalgam(lengths) => {
                f.write_str("amalgam")?;
                for a in lengths {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            FamilySpec::TightnessChain(t) => write!(f, "tightness-chain {t}"),
            FamilySpec::SubdividedStar(t) => write!(f, "subdivided-star {t}"),
            FamilySpec::Exceptional(id) => write!(f, "exceptional {id}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_words(&s.split_whitespace().collect::<Vec<_>>())
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    let bad = |msg: &str| Err(Error::Domain(format!("{spec}: {msg}")));
    match *spec {
        FamilySpec::Path(n) if n >= 1 => Graph::path(n),
        FamilySpec::Path(_) => bad("needs n >= 1"),
        FamilySpec::Cycle(n) if n >= 3 => Graph::cycle(n),
        FamilySpec::Cycle(_) => bad("needs n >= 3"),
        FamilySpec::CompleteBipartite(s, t) if s >= 1 && t >= 1 => Graph::complete_bipartite(s, t),
        FamilySpec::CompleteBipartite(..) => bad("needs both parts non-empty"),
        FamilySpec::Complete(n) if n >= 1 => Graph::complete(n),
        FamilySpec::Complete(_) => bad("needs n >= 1"),
        FamilySpec::CompleteMinusEdge(n) if n >= 2 => Graph::complete(n)?.without_edge(0, 1),
        FamilySpec::CompleteMinusEdge(_) => bad("needs n >= 2"),
        FamilySpec::Amalgam(ref lengths) => amalgam(lengths),
        FamilySpec::TightnessChain(t) if t >= 1 => tightness_chain(t),
        FamilySpec::TightnessChain(_) => bad("needs t >= 1"),
        FamilySpec::SubdividedStar(t) if t >= 1 => subdivided_star(t),
        FamilySpec::SubdividedStar(_) => bad("needs t >= 1"),
        FamilySpec::Exceptional(id) => Ok(exceptional(id)),
    }
}

/// Order of the amalgam of `lengths` and, per cycle, the label offset of its
/// first non-center vertex minus one.
pub fn amalgam_offsets(lengths: &[usize]) -> Result<(usize, Vec<usize>)> {
    if lengths.is_empty() {
        return Err(Error::Domain("amalgam needs at least one cycle".into()));
    }
    let mut offsets = Vec::with_capacity(lengths.len());
    let mut n = 1usize;
    for &a in lengths {
        if a < 3 {
            return Err(Error::Domain(format!("amalgam cycle length {a} < 3")));
        }
        offsets.push(n - 1);
        n += a - 1;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
    }
    Ok((n, offsets))
}

/// Cycles of the given lengths glued at vertex 0. Cycle `i` runs
/// 0, o+1, o+2, …, o+aᵢ−1, 0 where `o` is its offset.
pub fn amalgam(lengths: &[usize]) -> Result<Graph> {
    let (n, offsets) = amalgam_offsets(lengths)?;
    let mut edges = Vec::with_capacity(n + lengths.len());
    for (&a, &o) in lengths.iter().zip(&offsets) {
        edges.push((0, o + 1));
        for t in 1..a - 1 {
            edges.push((o + t, o + t + 1));
        }
        edges.push((o + a - 1, 0));
    }
    Graph::from_edges(n, &edges)
}

/// Path v₁…v_t with a pendant edge vᵢuᵢ and a 4-cycle through each uᵢ.
/// Block `i` is vᵢ = 5i, uᵢ = 5i+1 and the cycle uᵢ, 5i+2, 5i+3, 5i+4.
pub fn tightness_chain(t: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(6 * t);
    for i in 0..t {
        let b = 5 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b + 4), (b + 4, b + 1)]);
        if i + 1 < t {
            edges.push((b, b + 5));
        }
    }
    Graph::from_edges(5 * t, &edges)
}

/// K₁,t with every edge replaced by a path with four edges; center 0, arm
/// `i` is 4i+1 (next to the center) through 4i+4 (the leaf).
pub fn subdivided_star(t: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(4 * t);
    for i in 0..t {
        let b = 4 * i;
        edges.extend([(0, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b + 4)]);
    }
    Graph::from_edges(4 * t + 1, &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalId {
    C4,
    C7,
    C8,
    C14,
    G9,
    G14,
    G14p,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

impl ExceptionalId {
    /// The seven triangle-free graphs with δ ≥ 2 whose hop domination number
    /// exceeds 2n/5.
    pub const HOP: [ExceptionalId; 7] = [
        ExceptionalId::C4,
        ExceptionalId::C7,
        ExceptionalId::C8,
        ExceptionalId::C14,
        ExceptionalId::G9,
        ExceptionalId::G14,
        ExceptionalId::G14p,
    ];

    /// The seven connected graphs with δ ≥ 2 whose domination number exceeds 2n/5.
    pub const DOM: [ExceptionalId; 7] = [
        ExceptionalId::H1,
        ExceptionalId::H2,
        ExceptionalId::H3,
        ExceptionalId::H4,
        ExceptionalId::H5,
        ExceptionalId::H6,
        ExceptionalId::H7,
    ];

    pub fn name(self) -> &'static str {
        use ExceptionalId::*;
        match self {
            C4 => "C4",
            C7 => "C7",
            C8 => "C8",
            C14 => "C14",
            G9 => "G9",
            G14 => "G14",
            G14p => "G14'",
            H1 => "H1",
            H2 => "H2",
            H3 => "H3",
            H4 => "H4",
            H5 => "H5",
            H6 => "H6",
            H7 => "H7",
        }
    }
}

impl fmt::Display for ExceptionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExceptionalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("G14p") || t.eq_ignore_ascii_case("G14prime") {
            return Ok(ExceptionalId::G14p);
        }
        ExceptionalId::HOP
            .iter()
            .chain(&ExceptionalId::DOM)
            .find(|id| id.name().eq_ignore_ascii_case(t))
            .copied()
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

/// Canonical graph6 forms of H1..H7, in order of (order, canonical form).
/// They are the output of `derive_exceptional(7, Dom, ..)`; a test re-derives them.
const H_FAMILY: [&str; 7] = ["C]", "F?NF_", "F@Ue?", "F@pTG", "FHQ[o", "FKCmW", "FK_yw"];

pub fn exceptional(id: ExceptionalId) -> Graph {
    use ExceptionalId::*;
    let cycle = |n| Graph::cycle(n).expect("valid cycle");
    match id {
        C4 => cycle(4),
        C7 => cycle(7),
        C8 => cycle(8),
        C14 => cycle(14),
        // C8 on w1..w8 (0..7) plus w1' (8) adjacent to w2 and w8
        G9 => cycle(8).with_vertex(1 << 1 | 1 << 7).expect("order 9"),
        // chords v1v8, then v2v9
        G14 => cycle(14).with_edge(0, 7).expect("valid chord"),
        G14p => cycle(14).with_edge(0, 7).and_then(|g| g.with_edge(1, 8)).expect("valid chords"),
        H1 | H2 | H3 | H4 | H5 | H6 | H7 => {
            let k = id as usize - H1 as usize;
            parse_graph6(H_FAMILY[k]).expect("stored form parses")
        }
    }
}

/// Canonical forms of the given exceptional graphs.
pub fn exceptional_forms(ids: &[ExceptionalId]) -> Vec<String> {
    ids.iter().map(|&id| canonical_form(&exceptional(id))).collect()
}

/// The member of `ids` isomorphic to `g`, if any.
pub fn match_exceptional(g: &Graph, ids: &[ExceptionalId]) -> Option<ExceptionalId> {
    let mut form = None;
    ids.iter().copied().find(|&id| {
        let h = exceptional(id);
        h.n() == g.n()
            && h.edge_count() == g.edge_count()
            && *form.get_or_insert_with(|| canonical_form(g)) == canonical_form(&h)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Dom,
    Hop,
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dom" | "gamma" => Ok(Parameter::Dom),
            "hop" | "gamma_h" => Ok(Parameter::Hop),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

impl From<Parameter> for Kind {
    fn from(p: Parameter) -> Kind {
        match p {
            Parameter::Dom => Kind::Dom,
            Parameter::Hop => Kind::Hop,
        }
    }
}

/// Largest `n_max` accepted by [`derive_exceptional`].
pub const MAX_DERIVE_ORDER: usize = 9;

/// All connected graphs with δ ≥ 2 on at most `n_max` vertices, restricted
/// further by `constraints`, whose `parameter` value exceeds 2n/5. Sorted by
/// order, then canonical form; each graph is canonically labeled.
pub fn derive_exceptional(n_max: usize, parameter: Parameter, constraints: EnumFilters) -> Result<Vec<Graph>> {
    if n_max > MAX_DERIVE_ORDER {
        return Err(Error::SizeGuard { n: n_max, limit: MAX_DERIVE_ORDER });
    }
    let filters = EnumFilters {
        connected: true,
        min_degree: constraints.min_degree.max(2),
        ..constraints
    };
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in enumerate_graphs(n, &filters)? {
            let r = solve(&g, parameter.into(), DEFAULT_BUDGET)?;
            if !r.optimal {
                return Err(Error::BudgetExceeded(DEFAULT_BUDGET));
            }
            if 5 * r.value > 2 * n {
                out.push(g);
            }
        }
    }
    Ok(out)
}
