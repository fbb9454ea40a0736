use std::collections::BTreeSet;

use proptest::prelude::*;

use hopdom::dist2::two_step_graph;
use hopdom::families::{enumerate_graphs, EnumFilters};
use hopdom::graph::{canonical_form, is_isomorphic, parse_graph6, Graph};
use hopdom::reductions::{certify_two_fifths, check_two_fifths_preconditions, cut_edges, find_twins, reduce_twin};
use hopdom::solver::{brute_force_min, is_valid, solve, Kind, DEFAULT_BUDGET};
use hopdom::verify::{check_graph, parse_suite, Report};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn permuted(g: &Graph, seed: &[usize]) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    for (i, &s) in seed.iter().enumerate().take(g.n()) {
        perm.swap(i, s % g.n());
    }
    g.relabel(&perm)
}

/// Pairs at BFS distance exactly two.
fn bfs_two_step(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for (v, d) in g.bfs_distances(u).into_iter().enumerate() {
            if u < v && d == Some(2) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn two_step_graph_is_distance_two(g in graph_strategy(24)) {
        prop_assert_eq!(two_step_graph(&g), bfs_two_step(&g));
    }

    #[test]
    fn solver_matches_brute_force(g in graph_strategy(11)) {
        for kind in [Kind::Dom, Kind::Total, Kind::Hop] {
            if kind == Kind::Total && g.has_isolated_vertex() {
                continue;
            }
            let r = solve(&g, kind, DEFAULT_BUDGET).unwrap();
            prop_assert!(r.optimal);
            prop_assert!(is_valid(&g, kind, &r.witness));
            prop_assert_eq!(r.value, brute_force_min(&g, kind).unwrap().value);
        }
    }

    #[test]
    fn canonical_form_is_invariant(g in graph_strategy(16), seed in proptest::collection::vec(0usize..64, 16)) {
        let h = permuted(&g, &seed);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(parse_graph6(&canonical_form(&g)).unwrap().edge_count(), g.edge_count());
    }

    #[test]
    fn hop_value_is_invariant(g in graph_strategy(14), seed in proptest::collection::vec(0usize..64, 14)) {
        let h = permuted(&g, &seed);
        let a = solve(&g, Kind::Hop, DEFAULT_BUDGET).unwrap().value;
        let b = solve(&h, Kind::Hop, DEFAULT_BUDGET).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn report_is_order_independent(gs in proptest::collection::vec(graph_strategy(8), 1..12)) {
        let suite = parse_suite("T2,T1,T4,R1").unwrap();
        let reports: Vec<Report> = gs.iter().map(|g| Report::from_verdict(&check_graph(g, &suite, DEFAULT_BUDGET))).collect();
        let forward = reports.iter().cloned().fold(Report::default(), Report::merge);
        let backward = reports.iter().rev().cloned().fold(Report::default(), Report::merge);
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(forward.count, gs.len());
        for t in forward.totals.values() {
            prop_assert_eq!(t.pass + t.fail + t.skipped, gs.len());
        }
    }
}

#[test]
fn cut_edges_match_naive_oracle() {
    for n in 1..=8 {
        for g in enumerate_graphs(n, &EnumFilters::default()).unwrap() {
            let components = g.component_sets().len();
            let naive: Vec<(usize, usize)> = g
                .edges()
                .filter(|&(u, v)| g.without_edge(u, v).unwrap().component_sets().len() > components)
                .collect();
            assert_eq!(cut_edges(&g), naive, "{g}");
        }
    }
}

#[test]
fn twin_reduction_never_increases_hop_value() {
    let tf = EnumFilters { triangle_free: true, ..Default::default() };
    let mut checked = 0;
    for n in 2..=8 {
        for g in enumerate_graphs(n, &tf).unwrap() {
            let before = solve(&g, Kind::Hop, DEFAULT_BUDGET).unwrap().value;
            let removed: BTreeSet<usize> = find_twins(&g).into_iter().flat_map(|(a, b)| [a, b]).collect();
            for w in removed {
                let r = reduce_twin(&g, w).unwrap();
                assert!(before <= solve(&r.graph, Kind::Hop, DEFAULT_BUDGET).unwrap().value, "{g} - {w}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn certificates_on_enumerated_graphs() {
    let f = EnumFilters { connected: true, triangle_free: true, min_degree: 2, girth_at_least: None };
    for n in 4..=9 {
        for g in enumerate_graphs(n, &f).unwrap() {
            if check_two_fifths_preconditions(&g).is_err() {
                continue;
            }
            let c = certify_two_fifths(&g, DEFAULT_BUDGET).unwrap();
            assert!(is_valid(&g, Kind::Hop, &c.witness));
            assert!(5 * c.size <= 2 * n);
            assert_eq!(c.bound, 2 * n / 5);
        }
    }
}

#[test]
fn verification_finds_no_failures_up_to_eight() {
    let suite = parse_suite("T2,T1,T4,T3,R1,SANDWICH,LNDELTA,HAMP,HAMC").unwrap();
    for n in 1..=8 {
        for g in enumerate_graphs(n, &EnumFilters { connected: true, ..Default::default() }).unwrap() {
            let v = check_graph(&g, &suite, DEFAULT_BUDGET);
            assert!(!v.has_failure(), "{g}: {:?}", v.checks);
        }
    }
}
