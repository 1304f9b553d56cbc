use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use truss_core::extremal::{
    clique_chain, clique_chain_remainder, critical_2truss, critical_truss, suspend, torus_embedding,
    truss_from_embedding, Construction,
};
use truss_core::graph::{
    connected_components, degeneracy, families, induced_by_edges, parse_edge_list_with,
    write_edge_list, ParseOptions,
};
use truss_core::peeler::{
    k_truss_components, max_k_truss, truss_decomposition, truss_decomposition_with, PeelOptions,
    ThresholdPeel,
};
use truss_core::triangles::{list_triangles, triangle_counts};
use truss_core::verify::{bound_report, is_k_truss, BoundReport};
use truss_core::witness::{truncated_decomposition_with, InitMode, WitnessConfig};
use truss_core::{EdgeId, Graph, TrussLabels};

use crate::args::{BenchArgs, Check, Cli, Command, Family, Generator, Init, WitnessArgs};
use crate::error::{CliError, Kind};

type Result<T> = std::result::Result<T, CliError>;

/// What a successful run reports back to `main`.
pub enum Outcome {
    Done,
    /// A `verify` check ran and failed.
    CheckFailed,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let mut out = open_output(cli.output.as_deref())?;
    let outcome = match &cli.command {
        Command::Stats { json } => stats(&read_graph(&cli)?, *json, &mut out),
        Command::Triangles { counts } => triangles(&read_graph(&cli)?, *counts, &mut out),
        Command::Truss { histogram, keep } => truss(&read_graph(&cli)?, *histogram, *keep, &mut out),
        Command::TruncatedTruss(w) => truncated(&read_graph(&cli)?, w, cli.verbose, &mut out),
        Command::Components { k } => components(&read_graph(&cli)?, *k, &mut out),
        Command::Generate {
            no_receipt,
            generator,
        } => generate(&cli, generator, *no_receipt, &mut out),
        Command::Verify { check } => verify(&read_graph(&cli)?, check, &mut out),
        Command::Bench(b) => bench(&cli, b, &mut out),
    }?;
    out.flush()?;
    Ok(outcome)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| CliError::new(Kind::Io, format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_graph(cli: &Cli) -> Result<Graph> {
    read_graph_from(cli.input.as_deref(), cli.allow_isolated)
}

fn read_graph_from(path: Option<&Path>, allow_isolated: bool) -> Result<Graph> {
    let opts = ParseOptions { allow_isolated };
    let reader: Box<dyn BufRead> = match path {
        Some(p) if p != Path::new("-") => {
            let f = File::open(p)
                .map_err(|e| CliError::new(Kind::Io, format!("{}: {e}", p.display())))?;
            Box::new(BufReader::new(f))
        }
        _ => Box::new(io::stdin().lock()),
    };
    parse_edge_list_with(reader, opts).map_err(|e| {
        let name = path.map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string());
        let err = CliError::from(e);
        CliError::new(err.kind, format!("{name}: {}", err.message))
    })
}

#[derive(Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    min_degree: usize,
    max_degree: usize,
    triangles: u64,
    degeneracy: usize,
    average_degeneracy: String,
    components: usize,
    max_trussness: u32,
}

fn stats(g: &Graph, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let d = degeneracy(g);
    let s = Stats {
        vertices: g.n(),
        edges: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        triangles: triangle_counts(g).total,
        degeneracy: d.degeneracy,
        average_degeneracy: d.average_degeneracy.to_string(),
        components: connected_components(g).count,
        max_trussness: truss_decomposition(g).max_tau(),
    };
    if json {
        serde_json::to_writer_pretty(&mut *out, &s)?;
        writeln!(out)?;
        return Ok(Outcome::Done);
    }
    let value = serde_json::to_value(&s)?;
    let fields = [
        "vertices",
        "edges",
        "min_degree",
        "max_degree",
        "triangles",
        "degeneracy",
        "average_degeneracy",
        "components",
        "max_trussness",
    ];
    for key in fields {
        match &value[key] {
            serde_json::Value::String(v) => writeln!(out, "{key}\t{v}")?,
            v => writeln!(out, "{key}\t{v}")?,
        }
    }
    Ok(Outcome::Done)
}

/// Sort key for labels: numeric labels in numeric order, before all others.
fn label_key(label: &str) -> (u8, u64, &str) {
    match label.parse::<u64>() {
        Ok(x) => (0, x, label),
        Err(_) => (1, 0, label),
    }
}

fn triangles(g: &Graph, counts: bool, out: &mut dyn Write) -> Result<Outcome> {
    if counts {
        let per_edge = triangle_counts(g).per_edge;
        for (e, (u, v)) in g.edges().enumerate() {
            writeln!(out, "{}\t{}\t{}", g.label(u), g.label(v), per_edge[e])?;
        }
        return Ok(Outcome::Done);
    }
    let mut rows: Vec<[&str; 3]> = list_triangles(g)
        .into_iter()
        .map(|t| {
            let mut row = [g.label(t.0), g.label(t.1), g.label(t.2)];
            row.sort_by_key(|l| label_key(l));
            row
        })
        .collect();
    rows.sort_by(|a, b| a.map(label_key).cmp(&b.map(label_key)));
    for [a, b, c] in rows {
        writeln!(out, "{a} {b} {c}")?;
    }
    Ok(Outcome::Done)
}

fn truss(g: &Graph, histogram: bool, keep: Option<u32>, out: &mut dyn Write) -> Result<Outcome> {
    if let Some(k) = keep {
        let sub = induced_by_edges(g, &max_k_truss(g, k))?;
        write_edge_list(&sub.graph, &mut *out)?;
        return Ok(Outcome::Done);
    }
    let labels = truss_decomposition(g);
    if histogram {
        for (k, count) in labels.histogram() {
            writeln!(out, "{k}\t{count}")?;
        }
        return Ok(Outcome::Done);
    }
    write_labels(g, &labels, false, out)?;
    Ok(Outcome::Done)
}

fn write_labels(g: &Graph, labels: &TrussLabels, marker: bool, out: &mut dyn Write) -> io::Result<()> {
    for (e, (u, v)) in g.edges().enumerate() {
        let e = e as EdgeId;
        write!(out, "{}\t{}\t{}", g.label(u), g.label(v), labels.tau(e))?;
        if marker {
            let kind = if labels.is_exact(e) { "exact" } else { "lower_bound" };
            write!(out, "\t{kind}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn witness_config(w: &WitnessArgs) -> WitnessConfig {
    let mode = match w.init {
        Init::Direct => InitMode::Direct,
        Init::Matrix => InitMode::Matrix,
    };
    WitnessConfig {
        sets: w.sets,
        prob: w.prob,
        b: w.b,
        mem_cap: w.mem_cap,
        ..WitnessConfig::new(w.k_trunc).with_seed(w.seed).with_init(mode)
    }
}

fn truncated(g: &Graph, w: &WitnessArgs, verbose: u8, out: &mut dyn Write) -> Result<Outcome> {
    let cfg = witness_config(w);
    let start = Instant::now();
    let (labels, st) = truncated_decomposition_with(g, &cfg)?;
    if verbose > 0 {
        eprintln!(
            "truncated decomposition: {:.3}s, {} enumerations, {} fallbacks, {} candidates, {} pushes, scan length {}",
            start.elapsed().as_secs_f64(),
            st.enumerations,
            st.fallbacks,
            st.candidates_tested,
            st.stack_pushes,
            st.scan_length
        );
    }
    write_labels(g, &labels, true, out)?;
    Ok(Outcome::Done)
}

fn components(g: &Graph, k: u32, out: &mut dyn Write) -> Result<Outcome> {
    let labels = truss_decomposition(g);
    for (c, comp) in k_truss_components(g, k, &labels)?.iter().enumerate() {
        for e in comp.iter() {
            let (u, v) = g.endpoints(e);
            writeln!(out, "{c}\t{}\t{}", g.label(u), g.label(v))?;
        }
    }
    Ok(Outcome::Done)
}

fn generate(cli: &Cli, generator: &Generator, no_receipt: bool, out: &mut dyn Write) -> Result<Outcome> {
    let c: Construction = match *generator {
        Generator::CliqueChain { k, s } => clique_chain(k, s)?,
        Generator::ChainRemainder { k, n } => clique_chain_remainder(k, n)?,
        Generator::Critical2truss { n } => critical_2truss(n)?,
        Generator::Suspend { k, added } => suspend(&read_graph(cli)?, k, added)?,
        Generator::TorusCritical { squares, t, k } => {
            truss_from_embedding(&torus_embedding(squares, t)?, k)?
        }
        Generator::Critical { k, n } => critical_truss(k, n)?,
    };
    if !no_receipt {
        out.write_all(c.receipt.to_comment_lines().as_bytes())?;
    }
    write_edge_list(&c.graph, &mut *out)?;
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct PropertyCheck {
    check: &'static str,
    k: u32,
    vertices: usize,
    edges: usize,
    passed: bool,
    reason: Option<String>,
}

impl PropertyCheck {
    fn table(&self) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        let rows = [
            ["check", "k", "vertices", "edges", "status"].map(String::from),
            [
                self.check.to_string(),
                self.k.to_string(),
                self.vertices.to_string(),
                self.edges.to_string(),
                status.to_string(),
            ],
        ];
        let width: Vec<usize> = (0..5).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap()).collect();
        let mut s = String::new();
        for r in &rows {
            let line: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            s.push_str(line.join("  ").trim_end());
            s.push('\n');
        }
        if let Some(reason) = &self.reason {
            s.push_str(&format!("reason: {reason}\n"));
        }
        s
    }
}

/// Why `g` is not a `k`-truss, if it is not.
fn truss_violation(g: &Graph, k: u32) -> Option<String> {
    if g.m() == 0 {
        return Some("graph has no edges".into());
    }
    let counts = triangle_counts(g).per_edge;
    if let Some((e, (u, v))) = g.edges().enumerate().find(|&(e, _)| counts[e] < k) {
        return Some(format!(
            "edge {}-{} lies in {} triangles",
            g.label(u),
            g.label(v),
            counts[e]
        ));
    }
    debug_assert!(is_k_truss(g, k));
    None
}

/// An edge whose deletion still leaves a nonempty `k`-truss, if any.
fn criticality_violation(g: &Graph, k: u32) -> Option<String> {
    let base = ThresholdPeel::new(g, k);
    (0..g.m() as EdgeId).find_map(|e| {
        let mut p = base.clone();
        p.remove(e);
        (!p.is_empty()).then(|| {
            let (u, v) = g.endpoints(e);
            format!(
                "deleting edge {}-{} leaves a {k}-truss with {} edges",
                g.label(u),
                g.label(v),
                p.edge_set().len()
            )
        })
    })
}

fn verify(g: &Graph, check: &Check, out: &mut dyn Write) -> Result<Outcome> {
    let (name, k, json, reason) = match *check {
        Check::Truss { k, json } => ("truss", k, json, truss_violation(g, k)),
        Check::Critical { k, json } => (
            "critical",
            k,
            json,
            truss_violation(g, k).or_else(|| criticality_violation(g, k)),
        ),
        Check::Bounds { k, json } => return verify_bounds(g, k, json, out),
    };
    if k == 0 {
        return Err(CliError::new(Kind::Config, "k must be at least 1"));
    }
    let res = PropertyCheck {
        check: name,
        k,
        vertices: g.n(),
        edges: g.m(),
        passed: reason.is_none(),
        reason,
    };
    if json {
        serde_json::to_writer_pretty(&mut *out, &res)?;
        writeln!(out)?;
    } else {
        out.write_all(res.table().as_bytes())?;
    }
    Ok(if res.passed { Outcome::Done } else { Outcome::CheckFailed })
}

fn verify_bounds(g: &Graph, k: Option<u32>, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let mut report = bound_report(g, &truss_decomposition(g))?;
    if let Some(k) = k {
        report.checks.retain(|c| c.k.is_none() || c.k == Some(k));
    }
    write_report(&report, json, out)?;
    Ok(if report.passed() { Outcome::Done } else { Outcome::CheckFailed })
}

fn write_report(report: &BoundReport, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, report)?;
        writeln!(out)?;
    } else {
        out.write_all(report.to_table().as_bytes())?;
    }
    Ok(())
}

fn bench_graphs(cli: &Cli, b: &BenchArgs) -> Result<Vec<(String, Graph)>> {
    let Some(family) = b.family else {
        if b.files.is_empty() {
            let g = read_graph(cli)?;
            return Ok(vec![("<stdin>".into(), g)]);
        }
        return b
            .files
            .iter()
            .map(|p: &PathBuf| Ok((p.display().to_string(), read_graph_from(Some(p), cli.allow_isolated)?)))
            .collect();
    };
    let graphs = match family {
        Family::Complete => [50, 100, 200]
            .map(|n| (format!("complete-{n}"), families::complete(n)))
            .to_vec(),
        Family::TriangleFree => [50, 100, 200]
            .into_iter()
            .flat_map(|n| {
                [
                    (format!("cycle-{n}"), families::cycle(n)),
                    (format!("star-{n}"), families::star(n)),
                ]
            })
            .collect(),
        Family::Gnp => (0..5u64)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(b.seed.wrapping_add(i));
                (format!("gnp-200-0.1-{i}"), families::gnp(200, 0.1, &mut rng))
            })
            .collect(),
        Family::Chain => [10, 20, 40]
            .into_iter()
            .map(|s| Ok((format!("chain-4-{s}"), clique_chain(4, s)?.graph)))
            .collect::<Result<_>>()?,
    };
    Ok(graphs)
}

fn bench(cli: &Cli, b: &BenchArgs, out: &mut dyn Write) -> Result<Outcome> {
    let graphs = bench_graphs(cli, b)?;
    writeln!(
        out,
        "graph\tn\tm\tmax_tau\trounds\tstack_pushes\tscan_length\tm_avg_degeneracy\tscan_ratio\tpeel_ms\twitness_ms\tfallback_rate"
    )?;
    let opts = PeelOptions {
        round_one_shortcut: true,
        check_invariants: false,
    };
    for (name, g) in &graphs {
        let start = Instant::now();
        let (labels, st) = truss_decomposition_with(g, opts);
        let peel_ms = start.elapsed().as_secs_f64() * 1e3;
        // m times the average degeneracy is the sum over edges of min(d(u), d(v))
        let work: u64 = g.edges().map(|(u, v)| g.degree(u).min(g.degree(v)) as u64).sum();
        let ratio = if work == 0 { 0.0 } else { st.scan_length as f64 / work as f64 };
        let (witness_ms, fallback) = if b.no_witness || g.m() == 0 {
            ("-".to_string(), "-".to_string())
        } else {
            let cfg = WitnessConfig {
                mem_cap: b.mem_cap,
                ..WitnessConfig::new(b.k_trunc).with_seed(b.seed)
            };
            let start = Instant::now();
            let (_, ws) = truncated_decomposition_with(g, &cfg)?;
            (
                format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
                format!("{:.4}", ws.fallback_rate()),
            )
        };
        writeln!(
            out,
            "{name}\t{}\t{}\t{}\t{}\t{}\t{}\t{work}\t{ratio:.3}\t{peel_ms:.3}\t{witness_ms}\t{fallback}",
            g.n(),
            g.m(),
            labels.max_tau(),
            st.rounds,
            st.stack_pushes,
            st.scan_length,
        )?;
    }
    Ok(Outcome::Done)
}
