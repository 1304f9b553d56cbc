//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{corpus, random_graph, CorpusGraph};
use truss_core::extremal::{clique_chain, critical_2truss, critical_bound, critical_truss, used_fallback};
use truss_core::graph::families::{complete, cycle, petersen, star};
use truss_core::peeler::{truss_decomposition, truss_decomposition_with, PeelOptions};
use truss_core::triangles::{enumerate_triangles, triangle_counts};
use truss_core::verify::{
    bound_report, brute_force_triangles, is_critical_k_truss, is_k_truss, oracle_truss_decomposition,
};
use truss_core::witness::{
    truncated_decomposition, truncated_decomposition_with, InitMode, WitnessConfig, WitnessState,
};
use truss_core::{EdgeId, Graph, Vertex};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn oracle_equivalence(corpus: &[CorpusGraph]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for c in corpus {
        let peeled = truss_decomposition(&c.graph);
        let oracle = oracle_truss_decomposition(&c.graph).expect("corpus is below the oracle cap");
        if peeled != oracle {
            mismatches.push(format!("n={} p={} seed={}", c.n, c.p, c.seed));
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "{} graphs, {} mismatches {:?}, {} (limit 60s)",
            corpus.len(),
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            secs(elapsed)
        ),
    )
}

fn truncated_equivalence(corpus: &[CorpusGraph]) -> Outcome {
    let mut runs = 0;
    let mut mismatches = Vec::new();
    for c in corpus {
        let exact = truss_decomposition(&c.graph);
        for k_trunc in [1, 2, 3, 5] {
            let expected = exact.clamped(k_trunc);
            for seed in 0..10 {
                let cfg = WitnessConfig::new(k_trunc).with_seed(seed);
                runs += 1;
                let got = truncated_decomposition(&c.graph, &cfg).unwrap();
                if got != expected {
                    mismatches.push(format!("n={} p={} seed={} k={k_trunc} wseed={seed}", c.n, c.p, c.seed));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{runs} runs (k_trunc in 1,2,3,5 x 10 seeds), {} mismatches {:?}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn triangle_correctness(corpus: &[CorpusGraph]) -> Outcome {
    let mut graphs: Vec<Graph> = corpus.iter().map(|c| c.graph.clone()).collect();
    graphs.extend((3..=12).map(complete));
    graphs.extend((3..=12).map(cycle));
    graphs.extend((1..=12).map(star));
    graphs.push(petersen());
    let mut failures = 0;
    let mut duplicates = 0;
    for g in &graphs {
        let oracle = brute_force_triangles(g).unwrap();
        let mut seen = HashSet::new();
        let mut per_edge = vec![0u32; g.m()];
        let total = enumerate_triangles(g, |t| {
            if !seen.insert(t) {
                duplicates += 1;
            }
            for (a, b) in [(t.0, t.1), (t.0, t.2), (t.1, t.2)] {
                per_edge[g.edge_id(a, b).unwrap() as usize] += 1;
            }
        });
        let counts = triangle_counts(g);
        if total != oracle.total || per_edge != oracle.per_edge || counts != oracle {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && duplicates == 0,
        format!("{} graphs, {failures} count mismatches, {duplicates} duplicate emissions", graphs.len()),
    )
}

fn clique_chain_equality() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for k in 1..=6u32 {
        for s in 1..=8u32 {
            cases += 1;
            let g = clique_chain(k, s).unwrap().graph;
            let (n, m) = (g.n() as u64, g.m() as u64);
            // m = (n - 1)(1 + k/2), doubled.
            if 2 * m != (n - 1) * (k as u64 + 2) || !is_k_truss(&g, k) {
                bad.push((k, s));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cases} cases (k<=6, s<=8), failures {bad:?}"))
}

fn critical_two_truss() -> Outcome {
    let mut bad = Vec::new();
    for n in 6..=30u32 {
        let g = critical_2truss(n).unwrap().graph;
        if g.m() as u32 != 3 * n - 6 || !is_critical_k_truss(&g, 2) {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n=6..=30, failures {bad:?}"))
}

fn critical_upper_bound() -> Outcome {
    let mut bad = Vec::new();
    let mut torus = 0;
    let mut fallback = Vec::new();
    let mut cells = 0;
    for k in 3..=5u32 {
        for n in k + 4..=40 {
            cells += 1;
            let c = match critical_truss(k, n) {
                Ok(c) => c,
                Err(e) => {
                    bad.push(format!("k={k} n={n}: {e}"));
                    continue;
                }
            };
            let within = c.graph.m() as u64 <= critical_bound(k, n);
            if c.graph.n() as u32 != n || !within || !is_critical_k_truss(&c.graph, k) {
                bad.push(format!("k={k} n={n}"));
            }
            if used_fallback(&c.receipt) {
                fallback.push(format!("({k},{n})"));
            } else {
                torus += 1;
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{cells} cells, {torus} via torus embedding, {} via ladder fallback (no clean embedding: {}), failures {bad:?}",
            fallback.len(),
            fallback.join(" ")
        ),
    )
}

fn bound_soundness(corpus: &[CorpusGraph]) -> Outcome {
    let mut violations = Vec::new();
    let mut checks = 0;
    for c in corpus {
        let report = bound_report(&c.graph, &truss_decomposition(&c.graph)).unwrap();
        checks += report.checks.len();
        for f in report.failures() {
            violations.push(format!("n={} p={} seed={}: {} k={:?} {}", c.n, c.p, c.seed, f.name, f.k, f.witness));
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{} graphs, {checks} worst-case checks, {} violations {:?}",
            corpus.len(),
            violations.len(),
            violations.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

/// Table row and residual count recomputed from the residual edge set.
fn from_scratch(st: &WitnessState<'_>, e: EdgeId) -> (Vec<u64>, u32) {
    let g = st.graph();
    let (u, v) = g.endpoints(e);
    let alive = |a: Vertex, b: Vertex| g.edge_id(a, b).is_some_and(|f| st.is_residual(f));
    let common: Vec<Vertex> = g.vertices().filter(|&w| alive(u, w) && alive(v, w)).collect();
    let row = st
        .sets()
        .iter()
        .map(|set| set.iter().filter(|w| common.contains(w)).map(|&w| Graph::witness_id(w)).sum())
        .collect();
    (row, common.len() as u32)
}

fn witness_consistency() -> Outcome {
    let mut stale = 0;
    let mut steps = 0;
    let sequences = 25;
    for seq in 0..sequences {
        let g = random_graph(20, 0.5, 500 + seq);
        let cfg = WitnessConfig::new(3).with_seed(seq).resolve(&g).unwrap();
        let mut st = WitnessState::init(&g, &cfg);
        let mut order: Vec<EdgeId> = (0..g.m() as EdgeId).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seq));
        for &e in &order {
            let found = st.enumerate_residual(e).unwrap();
            st.remove_edge(e, &found).unwrap();
            steps += 1;
            for f in (0..g.m() as EdgeId).filter(|&f| st.is_residual(f)) {
                let (row, delta) = from_scratch(&st, f);
                if st.row(f) != row.as_slice() || st.delta(f) != delta {
                    stale += 1;
                }
            }
        }
    }

    let mut init_mismatches = 0;
    let graphs = 20;
    for i in 0..graphs {
        let n = 20 + 2 * i as usize;
        let g = random_graph(n, 0.15 + 0.03 * i as f64, 900 + i);
        let cfg = WitnessConfig::new(2).with_seed(i).resolve(&g).unwrap();
        let sets = WitnessState::init(&g, &cfg).sets().to_vec();
        // Median degree as threshold, so both heavy and light vertices occur.
        let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        let threshold = degrees[degrees.len() / 2] as f64;
        let direct = WitnessState::with_sets(&g, sets.clone(), InitMode::Direct, threshold).unwrap();
        let matrix = WitnessState::with_sets(&g, sets, InitMode::Matrix, threshold).unwrap();
        let mismatch = (0..g.m() as EdgeId).any(|e| direct.row(e) != matrix.row(e) || direct.delta(e) != matrix.delta(e));
        init_mismatches += mismatch as usize;
    }
    outcome(
        stale == 0 && init_mismatches == 0,
        format!(
            "{sequences} removal sequences on G(20,0.5), {steps} removals, {stale} stale entries; \
             {graphs} graphs matrix vs direct init, {init_mismatches} mismatches"
        ),
    )
}

fn performance_properties(corpus: &[CorpusGraph]) -> Outcome {
    let mut over = Vec::new();
    for c in corpus {
        let g = &c.graph;
        let opts = PeelOptions {
            check_invariants: false,
            ..PeelOptions::default()
        };
        let (_, stats) = truss_decomposition_with(g, opts);
        let min_sum: u64 = g.edges().map(|(u, v)| g.degree(u).min(g.degree(v)) as u64).sum();
        // 2(m + m * avg_degeneracy) = 2(m + sum of min endpoint degrees)
        if stats.scan_length > 2 * (g.m() as u64 + min_sum) {
            over.push(format!("n={} p={} seed={}", c.n, c.p, c.seed));
        }
    }

    let (mut calls, mut fallbacks, mut seed) = (0u64, 0u64, 0u64);
    while calls < 10_000 {
        let g = random_graph(50, 0.4, 7000 + seed);
        let top = truss_decomposition(&g).max_tau() + 1;
        let cfg = WitnessConfig::new(top).with_seed(seed);
        let (_, stats) = truncated_decomposition_with(&g, &cfg).unwrap();
        calls += stats.enumerations;
        fallbacks += stats.fallbacks;
        seed += 1;
    }
    let rate = fallbacks as f64 / calls as f64;
    outcome(
        over.is_empty() && rate < 0.01,
        format!(
            "scan length over 2(m + m*avg_degeneracy) on {} of {} graphs; \
             fallback rate {fallbacks}/{calls} = {:.4}% on G(50,0.4) over {seed} graphs (limit 1%)",
            over.len(),
            corpus.len(),
            100.0 * rate
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("truncated equivalence", Box::new(|| truncated_equivalence(&corpus))),
        ("triangle correctness", Box::new(|| triangle_correctness(&corpus))),
        ("clique chain equality case", Box::new(clique_chain_equality)),
        ("critical 2-truss", Box::new(critical_two_truss)),
        ("critical k-truss upper bound", Box::new(critical_upper_bound)),
        ("bound soundness", Box::new(|| bound_soundness(&corpus))),
        ("witness structure consistency", Box::new(witness_consistency)),
        ("performance properties", Box::new(|| performance_properties(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += !o.passed as usize;
        println!(
            "criterion {} {:<30} {} [{}] {}",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            secs(start.elapsed()),
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
