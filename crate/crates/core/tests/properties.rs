mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_graph;
use truss_core::graph::{
    contract, degeneracy, induced_by_edges, parse_edge_list, write_edge_list,
};
use truss_core::peeler::{
    k_truss_components, max_k_truss, truss_decomposition, truss_decomposition_with, PeelOptions,
};
use truss_core::triangles::triangle_counts;
use truss_core::verify::{bound_report, is_k_truss, oracle_truss_decomposition};
use truss_core::witness::{truncated_decomposition, InitMode, WitnessConfig};
use truss_core::{EdgeId, Graph, Vertex};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

fn labelled_edges(g: &Graph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(u, v)| {
            let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in graph(30)) {
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(back.m(), g.m());
        prop_assert_eq!(labelled_edges(&back), labelled_edges(&g));
    }

    #[test]
    fn contraction_adds_counts(g in graph(12), h in graph(12), a in any::<u32>(), b in any::<u32>()) {
        let (gv, hv) = (a % g.n() as u32, b % h.n() as u32);
        let c = contract(&g, &h, gv, hv).unwrap();
        prop_assert_eq!(c.n(), g.n() + h.n() - 1);
        prop_assert_eq!(c.m(), g.m() + h.m());
        prop_assert_eq!(
            triangle_counts(&c).total,
            triangle_counts(&g).total + triangle_counts(&h).total
        );
    }

    #[test]
    fn degeneracy_bounds(g in graph(40)) {
        let d = degeneracy(&g);
        let delta = d.degeneracy as u64;
        let m = g.m() as u64;
        // average degeneracy <= 2 * degeneracy, and delta (delta + 1) / 2 <= m
        prop_assert!(*d.average_degeneracy.numer() <= 2 * delta * *d.average_degeneracy.denom());
        prop_assert!(delta * (delta + 1) / 2 <= m);
        let pos = d.positions();
        for v in g.vertices() {
            let later = g.neighbors(v).iter().filter(|&&w| pos[w as usize] > pos[v as usize]).count();
            prop_assert!(later <= d.degeneracy);
        }
    }

    #[test]
    fn scan_endpoint_has_lower_degree(g in graph(30)) {
        for e in 0..g.m() as EdgeId {
            let (s, o) = g.scan_order(e);
            prop_assert!((g.degree(s), s) < (g.degree(o), o));
            prop_assert_eq!(g.edge_id(s, o), Some(e));
        }
    }

    #[test]
    fn trussness_is_isomorphism_invariant(g in graph(25), seed in any::<u64>()) {
        let mut perm: Vec<Vertex> = g.vertices().collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm).unwrap();
        let (tg, th) = (truss_decomposition(&g), truss_decomposition(&h));
        for (e, (u, v)) in g.edges().enumerate() {
            let f = h.edge_id(perm[u as usize], perm[v as usize]).unwrap();
            prop_assert_eq!(tg.tau(e as EdgeId), th.tau(f));
        }
    }

    #[test]
    fn peeler_matches_oracle(g in graph(30)) {
        let opts = PeelOptions { check_invariants: true, ..PeelOptions::default() };
        let (labels, _) = truss_decomposition_with(&g, opts);
        prop_assert_eq!(&labels, &oracle_truss_decomposition(&g).unwrap());
        let no_shortcut = PeelOptions { round_one_shortcut: false, check_invariants: true };
        prop_assert_eq!(&labels, &truss_decomposition_with(&g, no_shortcut).0);
    }

    #[test]
    fn work_counters_are_bounded(g in graph(40)) {
        let (labels, stats) = truss_decomposition_with(&g, PeelOptions::default());
        let min_sum: u64 = g.edges().map(|(u, v)| g.degree(u).min(g.degree(v)) as u64).sum();
        let m = g.m() as u64;
        prop_assert!(stats.scan_length <= 2 * (m + min_sum));
        prop_assert!(stats.stack_pushes <= m);
        if m > 0 {
            prop_assert_eq!(stats.rounds, labels.max_tau() + 1);
        }
    }

    #[test]
    fn maximal_truss_and_components(g in graph(25), k in 1u32..5) {
        let labels = truss_decomposition(&g);
        let by_label: Vec<EdgeId> = (0..g.m() as EdgeId).filter(|&e| labels.tau(e) >= k).collect();
        let maximal = max_k_truss(&g, k);
        prop_assert_eq!(maximal.as_slice(), by_label.as_slice());
        for comp in k_truss_components(&g, k, &labels).unwrap() {
            let sub = induced_by_edges(&g, &comp).unwrap();
            prop_assert!(is_k_truss(&sub.graph, k));
        }
    }

    #[test]
    fn bounds_hold_on_exact_labels(g in graph(30)) {
        let report = bound_report(&g, &truss_decomposition(&g)).unwrap();
        prop_assert!(report.passed(), "{}", report.to_table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncated_labels_are_clamped_exact_labels(
        g in graph(30),
        k_trunc in 1u32..6,
        seed in any::<u64>(),
        matrix in any::<bool>(),
    ) {
        let mode = if matrix { InitMode::Matrix } else { InitMode::Direct };
        let cfg = WitnessConfig::new(k_trunc).with_seed(seed).with_init(mode);
        let got = truncated_decomposition(&g, &cfg).unwrap();
        prop_assert_eq!(got, truss_decomposition(&g).clamped(k_trunc));
    }
}
