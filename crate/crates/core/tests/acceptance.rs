//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed or overran its time limit.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hopdom::closed_forms::{
    build_hds_amalgam, build_hds_cycle, build_hds_path, cycle_bound, gamma_h_cycle, gamma_h_path, path_bound,
};
use hopdom::families::{
    amalgam, enumerate_graphs, exceptional, exceptional_forms, generate, EnumFilters, ExceptionalId, FamilySpec,
};
use hopdom::graph::{canonical_form, Graph, VertexSet};
use hopdom::reductions::{
    certify_two_fifths, check_two_fifths_preconditions, find_pendant_cycles, find_twins, normalize_hds_pendant4,
    reduce_twin,
};
use hopdom::solver::{is_hop_dominating, solve, Kind, DEFAULT_BUDGET};
use hopdom::verify::{parse_suite, verify_stream, CheckId, Source};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Exact optimum; a budget overrun is an error, never a silent upper bound.
fn exact(g: &Graph, kind: Kind) -> Result<usize, String> {
    let r = solve(g, kind, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.optimal, || format!("budget exhausted on {g}"))?;
    Ok(r.value)
}

fn filters(connected: bool, triangle_free: bool, min_degree: usize) -> EnumFilters {
    EnumFilters { connected, triangle_free, min_degree, girth_at_least: None }
}

fn enumerate_range(ns: std::ops::RangeInclusive<usize>, f: EnumFilters) -> Vec<Graph> {
    ns.flat_map(|n| enumerate_graphs(n, &f).expect("order in range")).collect()
}

fn c1_table() -> Outcome {
    let expected = [2, 2, 2, 3, 4, 3, 4, 4, 4, 5, 6];
    for (n, &want) in (4..=14).zip(&expected) {
        let solved = exact(&Graph::cycle(n).unwrap(), Kind::Hop)?;
        let formula = gamma_h_cycle(n).unwrap();
        ensure(solved == want && formula == want, || format!("C{n}: solver {solved}, formula {formula}, table {want}"))?;
    }
    Ok(format!("{expected:?}"))
}

fn c2_formulas() -> Outcome {
    for n in 1..=18 {
        let (f, s) = (gamma_h_path(n).unwrap(), exact(&Graph::path(n).unwrap(), Kind::Hop)?);
        ensure(f == s, || format!("P{n}: formula {f}, solver {s}"))?;
    }
    for n in 3..=18 {
        let (f, s) = (gamma_h_cycle(n).unwrap(), exact(&Graph::cycle(n).unwrap(), Kind::Hop)?);
        ensure(f == s, || format!("C{n}: formula {f}, solver {s}"))?;
    }
    Ok("paths 1..18, cycles 3..18".into())
}

fn c3_two_fifths_exhaustive() -> Outcome {
    let graphs = enumerate_range(4..=9, filters(true, true, 2));
    let mut violators = BTreeSet::new();
    for g in &graphs {
        if 5 * exact(g, Kind::Hop)? > 2 * g.n() {
            violators.insert(canonical_form(g));
        }
    }
    use ExceptionalId::*;
    let expected: BTreeSet<String> = exceptional_forms(&[C4, C7, C8, G9]).into_iter().collect();
    ensure(violators == expected, || format!("violators {violators:?}, expected {expected:?}"))?;
    let report = verify_stream(Source::Graphs(graphs.clone()), &parse_suite("T2").unwrap(), DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(report.failures() == 0 && report.budget_skipped.is_empty(), || format!("{report:?}"))?;
    Ok(format!("{} graphs, violators = {{C4, C7, C8, G9}}", graphs.len()))
}

fn c4_domination_exceptions() -> Outcome {
    let graphs = enumerate_range(1..=7, filters(true, false, 2));
    let mut violators = Vec::new();
    for g in &graphs {
        let gamma = exact(g, Kind::Dom)?;
        ensure(5 * gamma <= 2 * g.n() + 2, || format!("{g}: γ = {gamma} exceeds (2n+2)/5"))?;
        if 5 * gamma > 2 * g.n() {
            violators.push(canonical_form(g));
        }
    }
    ensure(violators.len() == 7, || format!("{} violators: {violators:?}", violators.len()))?;
    for n in [4, 7] {
        let c = canonical_form(&Graph::cycle(n).unwrap());
        ensure(violators.contains(&c), || format!("C{n} missing"))?;
    }
    let stored: BTreeSet<String> = exceptional_forms(&ExceptionalId::DOM).into_iter().collect();
    ensure(stored == violators.iter().cloned().collect(), || "stored H1..H7 differ from derivation".into())?;
    Ok(format!("{} graphs, 7 violators incl. C4, C7", graphs.len()))
}

fn c5_c13_triangle_free_up_to_8() -> Outcome {
    let graphs = enumerate_range(1..=8, filters(false, true, 0));
    let suite = parse_suite("T1,SANDWICH,HAMP,HAMC").unwrap();
    let report = verify_stream(Source::Graphs(graphs.clone()), &suite, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(report.failures() == 0, || format!("violators {:?}", report.violators))?;
    ensure(report.budget_skipped.is_empty(), || "budget skips".into())?;
    let no_isolated = graphs.iter().filter(|g| !g.has_isolated_vertex()).count();
    for id in [CheckId::T1, CheckId::SandwichLower, CheckId::SandwichUpper] {
        let pass = report.totals[&id].pass;
        ensure(pass == no_isolated, || format!("{id}: {pass} passes, {no_isolated} eligible graphs"))?;
    }
    let (hp, hc) = (report.totals[&CheckId::HamP].pass, report.totals[&CheckId::HamC].pass);
    Ok(format!("{} graphs, {no_isolated} without isolated vertices, {hp} traceable, {hc} hamiltonian", graphs.len()))
}

fn c6_half_bound() -> Outcome {
    let graphs = enumerate_range(4..=9, filters(true, true, 0));
    let report = verify_stream(Source::Graphs(graphs.clone()), &parse_suite("T4").unwrap(), DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    let t = report.totals[&CheckId::T4];
    ensure(t.fail == 0 && t.skipped == 0 && t.pass == graphs.len(), || format!("{t:?}"))?;
    Ok(format!("{} graphs", graphs.len()))
}

fn c7_tightness() -> Outcome {
    for t in 1..=3 {
        let g = generate(&FamilySpec::TightnessChain(t)).unwrap();
        let h = exact(&g, Kind::Hop)?;
        ensure(g.n() == 5 * t && h == 2 * t && 5 * h == 2 * g.n(), || format!("chain {t}: n {}, γ_h {h}", g.n()))?;
    }
    let chains: Vec<Graph> = (1..=3).map(|t| generate(&FamilySpec::TightnessChain(t)).unwrap()).collect();
    let report = verify_stream(Source::Graphs(chains), &parse_suite("T2").unwrap(), DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(report.violators.is_empty(), || "violators".into())?;
    let extremal = report.extremal.ok_or("no gap reported")?;
    ensure(extremal.gap == 0 && extremal.graphs.len() == 3, || format!("{extremal:?}"))?;
    for t in 2..=3 {
        let g = generate(&FamilySpec::SubdividedStar(t)).unwrap();
        let h = exact(&g, Kind::Hop)?;
        ensure(g.n() == 4 * t + 1 && h == 2 * t, || format!("star {t}: n {}, γ_h {h}", g.n()))?;
    }
    Ok("chains t=1..3 gap 0; subdivided stars t=2,3".into())
}

fn c8_characterizations() -> Outcome {
    for n in 3..=6 {
        let k = exact(&Graph::complete(n).unwrap(), Kind::Hop)?;
        let km = exact(&generate(&FamilySpec::CompleteMinusEdge(n)).unwrap(), Kind::Hop)?;
        ensure(k == n && km == n - 1, || format!("n={n}: K {k}, K- {km}"))?;
    }
    for t in 2..=5 {
        let s = exact(&Graph::complete_bipartite(1, t).unwrap(), Kind::Hop)?;
        ensure(s == 2, || format!("K1,{t}: {s}"))?;
    }
    Ok("K_n, K_n minus an edge, stars".into())
}

fn amalgam_multisets() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 4..=8 {
        out.push(vec![a]);
        for b in a..=8 {
            out.push(vec![a, b]);
            for c in b..=8 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn c9_builders() -> Outcome {
    let le = |size: usize, bound: Ratio<i64>| Ratio::from_integer(size as i64) <= bound;
    for n in 1..=40 {
        let g = Graph::path(n).unwrap();
        let s = build_hds_path(n).unwrap();
        ensure(is_hop_dominating(&g, &s) && le(s.len(), path_bound(n).unwrap()), || format!("P{n}"))?;
        ensure(s.len() == gamma_h_path(n).unwrap(), || format!("P{n} not optimal"))?;
        if n <= 14 {
            ensure(s.len() == exact(&g, Kind::Hop)?, || format!("P{n} vs solver"))?;
        }
    }
    for n in 4..=40 {
        let g = Graph::cycle(n).unwrap();
        let s = build_hds_cycle(n, false).unwrap();
        ensure(is_hop_dominating(&g, &s) && le(s.len(), cycle_bound(n).unwrap()), || format!("C{n}"))?;
        if n <= 14 {
            ensure(s.len() == exact(&g, Kind::Hop)?, || format!("C{n} vs solver"))?;
        }
        if n != 8 {
            let p = build_hds_cycle(n, true).unwrap();
            let adjacent = p.iter().any(|v| g.row(v) & p.bits() != 0);
            ensure(is_hop_dominating(&g, &p) && adjacent, || format!("C{n} pair mode"))?;
            ensure(5 * p.len() <= 2 * n + 2, || format!("C{n} pair mode size {}", p.len()))?;
        }
    }
    ensure(build_hds_cycle(8, true).is_err(), || "C8 pair mode accepted".into())?;
    let mut built = 0;
    for lengths in amalgam_multisets() {
        let g = amalgam(&lengths).unwrap();
        if lengths.len() == 1 && [4, 7, 8].contains(&lengths[0]) {
            ensure(build_hds_amalgam(&lengths).is_err(), || format!("{lengths:?} accepted"))?;
            continue;
        }
        let s = build_hds_amalgam(&lengths).map_err(|e| format!("{lengths:?}: {e}"))?;
        ensure(is_hop_dominating(&g, &s) && s.contains(0), || format!("{lengths:?} invalid"))?;
        ensure(5 * s.len() <= 2 * g.n(), || format!("{lengths:?}: size {} n {}", s.len(), g.n()))?;
        if g.n() <= 14 {
            ensure(exact(&g, Kind::Hop)? <= s.len(), || format!("{lengths:?} beats optimum"))?;
        }
        built += 1;
    }
    Ok(format!("paths, cycles, {built} amalgams"))
}

/// Family instances with a pendant 4-cycle.
fn pendant4_family() -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=4).map(|t| generate(&FamilySpec::TightnessChain(t)).unwrap()).collect();
    out.extend(amalgam_multisets().into_iter().filter(|l| l.len() > 1 && l.contains(&4)).map(|l| amalgam(&l).unwrap()));
    out
}

/// Every minimum hop dominating set of a small graph.
fn all_minimum_sets(g: &Graph, size: usize) -> Vec<VertexSet> {
    fn rec(g: &Graph, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if cur.len() == size {
            let s = VertexSet::from_vertices(g.n(), cur.iter().copied()).unwrap();
            if is_hop_dominating(g, &s) {
                out.push(s);
            }
            return;
        }
        for v in start..g.n() {
            cur.push(v);
            rec(g, size, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, size, 0, &mut Vec::new(), &mut out);
    out
}

fn c10_normalization() -> Outcome {
    let mut sets = 0;
    let graphs = pendant4_family();
    for g in &graphs {
        let cycles = find_pendant_cycles(g, 4);
        ensure(!cycles.is_empty(), || format!("{g}: no pendant 4-cycle"))?;
        let optimum = solve(g, Kind::Hop, DEFAULT_BUDGET).unwrap();
        let candidates = if g.n() <= 16 { all_minimum_sets(g, optimum.value) } else { vec![optimum.witness] };
        for s in candidates {
            let t = normalize_hds_pendant4(g, &s, DEFAULT_BUDGET).map_err(|e| format!("{g}: {e}"))?;
            ensure(t.len() == s.len() && is_hop_dominating(g, &t), || format!("{g}: size or validity lost"))?;
            for c in &cycles {
                ensure(t.contains(c.apex) && g.row(c.apex) & t.bits() != 0, || format!("{g}: apex {}", c.apex))?;
            }
            sets += 1;
        }
    }
    Ok(format!("{} graphs, {sets} minimum sets normalized", graphs.len()))
}

fn certify_family_instances() -> Vec<Graph> {
    let mut out: Vec<Graph> = (4..=40).map(|n| Graph::cycle(n).unwrap()).collect();
    out.extend(amalgam_multisets().into_iter().map(|l| amalgam(&l).unwrap()));
    out.extend([vec![5, 9, 9, 9], vec![10, 10, 10, 10], vec![4, 4, 4, 4, 4, 4], vec![13, 13, 13]].iter().map(|l| amalgam(l).unwrap()));
    out.extend((2..=8).map(|t| generate(&FamilySpec::TightnessChain(t)).unwrap()));
    for s in 2..=20 {
        for t in s..=40 - s {
            out.push(Graph::complete_bipartite(s, t).unwrap());
        }
    }
    out.extend(ExceptionalId::HOP.iter().map(|&id| exceptional(id)));
    out.into_iter().filter(|g| g.n() <= 40).collect()
}

fn c11_certify() -> Outcome {
    let enumerated = enumerate_range(4..=9, filters(true, true, 2));
    let family = certify_family_instances();
    let mut certified = 0;
    for g in enumerated.iter().chain(&family) {
        if check_two_fifths_preconditions(g).is_err() {
            continue;
        }
        let c = certify_two_fifths(g, DEFAULT_BUDGET).map_err(|e| format!("{g}: {e}"))?;
        ensure(is_hop_dominating(g, &c.witness) && 5 * c.size <= 2 * g.n(), || format!("{g}: bad certificate"))?;
        certified += 1;
    }
    ensure(certified >= enumerated.len() - 4, || format!("only {certified} certified"))?;
    Ok(format!("{certified} graphs certified"))
}

fn random_triangle_free(rng: &mut StdRng) -> Graph {
    let n = rng.gen_range(1..=10);
    let p = rng.gen_range(0.1..0.9);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.gen_range(0..=i));
    }
    let mut g = Graph::empty(n).unwrap();
    for (u, v) in pairs {
        if rng.gen_bool(p) && g.row(u) & g.row(v) == 0 {
            g = g.with_edge(u, v).unwrap();
        }
    }
    g
}

fn c12_random_monotonicity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x05ee_d2f5);
    let mut twin_checks = 0;
    for _ in 0..1000 {
        let g = random_triangle_free(&mut rng);
        let gh = exact(&g, Kind::Hop)?;
        let mut h = g.clone();
        for (u, v) in g.edges() {
            if rng.gen_bool(0.3) {
                h = h.without_edge(u, v).unwrap();
            }
        }
        let hh = exact(&h, Kind::Hop)?;
        ensure(gh <= hh, || format!("{g}: spanning subgraph {h} has γ_h {hh} < {gh}"))?;
        for (w, w2) in find_twins(&g) {
            for x in [w, w2] {
                let r = reduce_twin(&g, x).map_err(|e| e.to_string())?;
                let rh = exact(&r.graph, Kind::Hop)?;
                ensure(gh <= rh, || format!("{g}: removing twin {x} gives {rh} < {gh}"))?;
                twin_checks += 1;
            }
        }
    }
    Ok(format!("1000 graphs, {twin_checks} twin reductions"))
}

fn c14_exceptional_gate() -> Outcome {
    for id in ExceptionalId::HOP {
        let g = exceptional(id);
        ensure(g.is_connected() && g.is_triangle_free() && g.min_degree() >= 2, || format!("{id}: structure"))?;
        let h = exact(&g, Kind::Hop)?;
        ensure(5 * h > 2 * g.n(), || format!("{id}: γ_h {h} within 2n/5"))?;
        let ceiling = if id == ExceptionalId::C8 { 2 * g.n() + 4 } else { 2 * g.n() + 2 };
        ensure(5 * h <= ceiling, || format!("{id}: γ_h {h} above ceiling"))?;
    }
    Ok("C4, C7, C8, C14, G9, G14, G14'".into())
}

/// (number, name, time limit in seconds, check)
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "cycle table", 1, c1_table),
        (2, "path/cycle formulas vs solver", 10, c2_formulas),
        (3, "2n/5 hop bound, exhaustive n <= 9", 600, c3_two_fifths_exhaustive),
        (4, "domination exceptions n <= 7", 300, c4_domination_exceptions),
        (5, "hop vs total domination and sandwich, n <= 8 (with #13)", 300, c5_c13_triangle_free_up_to_8),
        (6, "n/2 hop bound, n <= 9", 300, c6_half_bound),
        (7, "tightness families", 30, c7_tightness),
        (8, "characterization spot checks", 1, c8_characterizations),
        (9, "constructive builders", 120, c9_builders),
        (10, "pendant 4-cycle normalization", 30, c10_normalization),
        (11, "2n/5 certificates", 600, c11_certify),
        (12, "randomized monotonicity and twins", 120, c12_random_monotonicity),
        (13, "hamiltonian path/cycle bounds (checked in #5)", 300, c5_c13_triangle_free_up_to_8),
        (14, "exceptional graph gate", 5, c14_exceptional_gate),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit}s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] #{k:<2} {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] #{k:<2} {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
