//! Generators for extremal k-trusses: clique chains, critical 2-trusses,
//! suspensions and critical k-trusses built from torus face embeddings.
//!
//! Every generator returns a [`Construction`] whose receipt compares the
//! vertex and edge counts predicted by the construction with the counts of
//! the emitted graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::triangles::triangle_counts;
use crate::verify::is_k_truss;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
    #[error("input graph is not a {k}-truss")]
    NotATruss { k: u32 },
    #[error("full suspension of the input is not a {k}-truss")]
    SuspensionNotTruss { k: u32 },
    #[error("no simple torus embedding with {squares} square faces and two {t}-faces")]
    Infeasible { squares: usize, t: usize },
    #[error("invalid face embedding: {0}")]
    InvalidEmbedding(String),
    #[error("{what}: expected {expected}, got {actual}")]
    CountMismatch {
        what: &'static str,
        expected: u64,
        actual: u64,
    },
    #[error("{m} edges exceed the bound {bound}")]
    BoundExceeded { m: u64, bound: u64 },
}

type Result<T> = std::result::Result<T, ExtremalError>;

fn invalid(name: &'static str, value: u64, reason: &'static str) -> ExtremalError {
    ExtremalError::InvalidParameter { name, value, reason }
}

/// Predicted versus measured size of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReceipt {
    pub generator: String,
    pub expected_n: u64,
    /// Exact edge count, for constructions that determine it.
    pub expected_m: Option<u64>,
    /// Upper bound on the edge count, for constructions that only bound it.
    pub max_m: Option<u64>,
    pub actual_n: u64,
    pub actual_m: u64,
    pub checks_passed: Vec<String>,
    pub notes: Vec<String>,
}

impl ConstructionReceipt {
    /// `# key: value` lines, safe to prepend to an edge list.
    pub fn to_comment_lines(&self) -> String {
        let mut out = format!("# generator: {}\n", self.generator);
        out += &format!("# expected_n: {}\n# actual_n: {}\n", self.expected_n, self.actual_n);
        if let Some(m) = self.expected_m {
            out += &format!("# expected_m: {m}\n");
        }
        if let Some(m) = self.max_m {
            out += &format!("# max_m: {m}\n");
        }
        out += &format!("# actual_m: {}\n", self.actual_m);
        out += &format!("# checks_passed: {}\n", self.checks_passed.join(","));
        for note in &self.notes {
            out += &format!("# note: {note}\n");
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: Graph,
    pub receipt: ConstructionReceipt,
}

/// Checks the graph against the predictions and assembles the receipt.
struct Audit {
    generator: String,
    expected_n: u64,
    expected_m: Option<u64>,
    max_m: Option<u64>,
    truss_k: Option<u32>,
    notes: Vec<String>,
}

impl Audit {
    fn new(generator: String, expected_n: u64) -> Self {
        Audit {
            generator,
            expected_n,
            expected_m: None,
            max_m: None,
            truss_k: None,
            notes: Vec::new(),
        }
    }

    fn edges(mut self, m: u64) -> Self {
        self.expected_m = Some(m);
        self
    }

    fn at_most(mut self, m: u64) -> Self {
        self.max_m = Some(m);
        self
    }

    fn truss(mut self, k: u32) -> Self {
        self.truss_k = Some(k);
        self
    }

    fn finish(self, graph: Graph) -> Result<Construction> {
        let (n, m) = (graph.n() as u64, graph.m() as u64);
        let mut checks = Vec::new();
        if n != self.expected_n {
            return Err(ExtremalError::CountMismatch {
                what: "vertex count",
                expected: self.expected_n,
                actual: n,
            });
        }
        checks.push("vertex_count".to_string());
        if let Some(expected) = self.expected_m {
            if m != expected {
                return Err(ExtremalError::CountMismatch {
                    what: "edge count",
                    expected,
                    actual: m,
                });
            }
            checks.push("edge_count".to_string());
        }
        if let Some(bound) = self.max_m {
            if m > bound {
                return Err(ExtremalError::BoundExceeded { m, bound });
            }
            checks.push("edge_bound".to_string());
        }
        if let Some(k) = self.truss_k {
            if !is_k_truss(&graph, k) {
                return Err(ExtremalError::NotATruss { k });
            }
            checks.push(format!("{k}_truss"));
        }
        Ok(Construction {
            graph,
            receipt: ConstructionReceipt {
                generator: self.generator,
                expected_n: self.expected_n,
                expected_m: self.expected_m,
                max_m: self.max_m,
                actual_n: n,
                actual_m: m,
                checks_passed: checks,
                notes: self.notes,
            },
        })
    }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Adds a clique on `vertices` to `edges`.
fn push_clique(edges: &mut Vec<(Vertex, Vertex)>, vertices: &[Vertex]) {
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            edges.push((a, b));
        }
    }
}

/// `s` copies of `K_{k+2}` glued in a chain, consecutive copies sharing one
/// vertex: `n = s(k+1) + 1`, `m = (n-1)(1 + k/2)`.
pub fn clique_chain(k: u32, s: u32) -> Result<Construction> {
    if k == 0 {
        return Err(invalid("k", 0, "must be at least 1"));
    }
    if s == 0 {
        return Err(invalid("s", 0, "must be at least 1"));
    }
    let (k64, s64) = (k as u64, s as u64);
    let n = s64 * (k64 + 1) + 1;
    let mut edges = Vec::new();
    for i in 0..s {
        let start = i * (k + 1);
        let block: Vec<Vertex> = (start..start + k + 2).collect();
        push_clique(&mut edges, &block);
    }
    let graph = Graph::from_edges(n as usize, edges).expect("chain blocks share single vertices");
    Audit::new(format!("clique-chain k={k} s={s}"), n)
        .edges(s64 * choose2(k64 + 2))
        .truss(k)
        .finish(graph)
}

/// A clique chain padded to exactly `n` vertices with a final `K_r`,
/// `k + 2 <= r <= 2k + 2`.
pub fn clique_chain_remainder(k: u32, n: u32) -> Result<Construction> {
    if k == 0 {
        return Err(invalid("k", 0, "must be at least 1"));
    }
    if n < k + 2 {
        return Err(invalid("n", n as u64, "must be at least k + 2"));
    }
    let s = (n - (k + 2)) / (k + 1);
    let r = n - s * (k + 1);
    let mut edges = Vec::new();
    for i in 0..s {
        let start = i * (k + 1);
        let block: Vec<Vertex> = (start..start + k + 2).collect();
        push_clique(&mut edges, &block);
    }
    let start = s * (k + 1);
    let tail: Vec<Vertex> = (start..start + r).collect();
    push_clique(&mut edges, &tail);
    let graph = Graph::from_edges(n as usize, edges).expect("blocks share single vertices");
    let mut audit = Audit::new(format!("chain-remainder k={k} n={n}"), n as u64)
        .edges(s as u64 * choose2(k as u64 + 2) + choose2(r as u64))
        .truss(k);
    audit.notes.push(format!("s={s} r={r}"));
    audit.finish(graph)
}

/// The cycle `C_{n-2}` plus two non-adjacent apexes joined to every cycle
/// vertex: a critical 2-truss with `3n - 6` edges.
pub fn critical_2truss(n: u32) -> Result<Construction> {
    if n < 6 {
        return Err(invalid("n", n as u64, "must be at least 6"));
    }
    let c = n - 2;
    let mut edges = Vec::new();
    for i in 0..c {
        edges.push((i, (i + 1) % c));
        edges.push((i, c));
        edges.push((i, c + 1));
    }
    let graph = Graph::from_edges(n as usize, edges).expect("wheel edges are distinct");
    Audit::new(format!("critical-2truss n={n}"), n as u64)
        .edges(3 * n as u64 - 6)
        .truss(2)
        .finish(graph)
}

/// Adds `added` apexes (ids `n..n+added`) joined to an inclusion-minimal set
/// of old vertices keeping the result a `(k + added)`-truss.
///
/// Starting from every apex-old-vertex edge, candidates are dropped greedily
/// in ascending `(apex, old vertex)` order whenever the graph stays a
/// `(k + added)`-truss with no isolated apex, sweeping until no single
/// candidate can go.
pub fn suspend(g: &Graph, k: u32, added: u32) -> Result<Construction> {
    if !(1..=2).contains(&added) {
        return Err(invalid("added", added as u64, "must be 1 or 2"));
    }
    if !is_k_truss(g, k) {
        return Err(ExtremalError::NotATruss { k });
    }
    let target = k + added;
    let n = g.n() as Vertex;
    let apexes: Vec<Vertex> = (n..n + added).collect();
    let full = Graph::from_edges(
        (n + added) as usize,
        g.edges().chain(apexes.iter().flat_map(|&x| (0..n).map(move |v| (v, x)))),
    )
    .expect("apex edges are new");
    let mut count = triangle_counts(&full).per_edge;
    if count.iter().any(|&c| c < target) {
        return Err(ExtremalError::SuspensionNotTruss { k: target });
    }
    let mut alive = vec![true; full.m()];
    let mut apex_degree = vec![n as usize; added as usize];
    // Removing an apex edge can free an earlier candidate, so sweep until
    // no candidate can be dropped.
    let mut changed = true;
    while changed {
        changed = false;
        for (a, &x) in apexes.iter().enumerate() {
            for v in 0..n {
                let e = full.edge_id(x, v).unwrap();
                if !alive[e as usize] || apex_degree[a] == 1 {
                    continue;
                }
                let mut touched = Vec::new();
                for (&w, &xw) in full.neighbors(x).iter().zip(full.incident_edges(x)) {
                    if !alive[xw as usize] {
                        continue;
                    }
                    if let Some(vw) = full.edge_id(v, w).filter(|&f| alive[f as usize]) {
                        touched.extend([xw, vw]);
                    }
                }
                // Every touched edge loses exactly one triangle.
                if touched.iter().all(|&f| count[f as usize] > target) {
                    alive[e as usize] = false;
                    apex_degree[a] -= 1;
                    for f in touched {
                        count[f as usize] -= 1;
                    }
                    changed = true;
                }
            }
        }
    }
    let graph = Graph::from_edges(
        full.n(),
        full.edges().enumerate().filter(|&(e, _)| alive[e]).map(|(_, uv)| uv),
    )
    .expect("subset of a simple graph");
    Audit::new(format!("suspend k={k} added={added}"), (n + added) as u64)
        .at_most((g.m() + added as usize * g.n()) as u64)
        .truss(target)
        .finish(graph)
}

/// `2m <= 2n(k+1) - k^2 - 4k + 1`, floored.
fn ladder_bound(k: u32, n: u32) -> u64 {
    let (k, n) = (k as u64, n as u64);
    (2 * n * (k + 1) + 1 - k * k - 4 * k) / 2
}

/// Critical `k`-truss on `n >= k + 4` vertices by repeated suspension of a
/// critical 2-truss: two apexes at a time for even `k`, one final apex for
/// odd `k`.
pub fn ladder(k: u32, n: u32) -> Result<Construction> {
    if k < 2 {
        return Err(invalid("k", k as u64, "must be at least 2"));
    }
    if n < k + 4 {
        return Err(invalid("n", n as u64, "must be at least k + 4"));
    }
    let graph = ladder_graph(k, n)?;
    Audit::new(format!("ladder k={k} n={n}"), n as u64)
        .at_most(ladder_bound(k, n))
        .truss(k)
        .finish(graph)
}

fn ladder_graph(k: u32, n: u32) -> Result<Graph> {
    if k % 2 == 1 {
        let inner = ladder_graph(k - 1, n - 1)?;
        return Ok(suspend(&inner, k - 1, 1)?.graph);
    }
    let mut g = critical_2truss(n + 2 - k)?.graph;
    let mut level = 2;
    while level < k {
        g = suspend(&g, level, 2)?.graph;
        level += 2;
    }
    Ok(g)
}

/// A graph `T` on the torus given purely by its face boundary walks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceEmbedding {
    vertex_count: usize,
    faces: Vec<Vec<Vertex>>,
    /// Sorted edges of `T` with the two faces containing each.
    edge_faces: BTreeMap<(Vertex, Vertex), (usize, usize)>,
}

impl FaceEmbedding {
    /// Validates that faces are simple cycles of length at least 4 covering
    /// every vertex, every edge lies on exactly two distinct faces, `T` is
    /// connected, and `V - E + F = 0`.
    pub fn new(vertex_count: usize, faces: Vec<Vec<Vertex>>) -> Result<Self> {
        let bad = |msg: String| Err(ExtremalError::InvalidEmbedding(msg));
        let mut seen_vertex = vec![false; vertex_count];
        let mut incidence: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
        for (f, walk) in faces.iter().enumerate() {
            if walk.len() < 4 {
                return bad(format!("face {f} has length {}", walk.len()));
            }
            let distinct: BTreeSet<Vertex> = walk.iter().copied().collect();
            if distinct.len() != walk.len() {
                return bad(format!("face {f} repeats a vertex"));
            }
            for (i, &a) in walk.iter().enumerate() {
                if a as usize >= vertex_count {
                    return bad(format!("face {f} uses unknown vertex {a}"));
                }
                seen_vertex[a as usize] = true;
                let b = walk[(i + 1) % walk.len()];
                incidence.entry((a.min(b), a.max(b))).or_default().push(f);
            }
        }
        if let Some(v) = seen_vertex.iter().position(|&s| !s) {
            return bad(format!("vertex {v} lies on no face"));
        }
        let mut edge_faces = BTreeMap::new();
        for (&e, fs) in &incidence {
            match fs[..] {
                [a, b] if a != b => {
                    edge_faces.insert(e, (a, b));
                }
                _ => return bad(format!("edge {}-{} lies on faces {fs:?}", e.0, e.1)),
            }
        }
        let euler = vertex_count as i64 - edge_faces.len() as i64 + faces.len() as i64;
        if euler != 0 {
            return bad(format!("Euler characteristic {euler}, expected 0"));
        }
        let emb = FaceEmbedding {
            vertex_count,
            faces,
            edge_faces,
        };
        let t = emb.skeleton();
        if crate::graph::connected_components(&t).count != 1 {
            return bad("T is disconnected".to_string());
        }
        Ok(emb)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn edge_count(&self) -> usize {
        self.edge_faces.len()
    }

    /// Total face length `g`, twice the edge count.
    pub fn total_face_length(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// The two faces containing each edge of `T`.
    pub fn edge_face_incidence(&self) -> &BTreeMap<(Vertex, Vertex), (usize, usize)> {
        &self.edge_faces
    }

    /// Face lengths, sorted descending.
    pub fn face_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        l.sort_unstable_by(|a, b| b.cmp(a));
        l
    }

    /// The graph `T` itself.
    pub fn skeleton(&self) -> Graph {
        Graph::from_edges(self.vertex_count, self.edge_faces.keys().copied())
            .expect("edge map keys are distinct")
    }

    /// `T` is triangle-free and every face boundary is an induced cycle of
    /// `T`. Clean embeddings yield critical trusses; others generally do not.
    pub fn is_clean(&self) -> bool {
        let t = self.skeleton();
        if triangle_counts(&t).total > 0 {
            return false;
        }
        self.faces.iter().all(|walk| {
            let chords = walk
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| walk[i + 1..].iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| t.has_edge(a, b))
                .count();
            chords == walk.len()
        })
    }
}

/// Faces of a circular ladder: two cycles of rungs' endpoints on `C_h`,
/// described by the gaps `(left, right)` each face spans along the cycle.
fn ladder_faces(h: usize, gaps: &[(usize, usize)], sigma: usize) -> Vec<Vec<Vertex>> {
    let (mut a, mut c) = (0, sigma);
    let mut faces = Vec::with_capacity(gaps.len());
    for &(dl, dr) in gaps {
        let mut walk: Vec<Vertex> = (0..=dl).map(|s| ((a + s) % h) as Vertex).collect();
        walk.extend((0..=dr).rev().map(|s| ((c + s) % h) as Vertex));
        faces.push(walk);
        a += dl;
        c += dr;
    }
    faces
}

/// A torus embedding with two `t`-faces and `squares` 4-faces.
///
/// `T` is the cycle `C_h`, `h = squares + t - 2`, with `squares + 2` chords
/// ("rungs") read off a circular ladder whose two long faces skip rungs.
/// Gap splits, the position of the second long face and the rung offset are
/// searched in a fixed order; the first clean embedding wins, then the first
/// valid one.
pub fn torus_embedding(squares: usize, t: usize) -> Result<FaceEmbedding> {
    if t < 4 {
        return Err(invalid("t", t as u64, "must be at least 4"));
    }
    let h = squares + t - 2;
    let r = squares + 2;
    let mut fallback = None;
    for d_a in 0..=t - 2 {
        let d_b = t - 2 - d_a;
        for pos in 1..r {
            let mut gaps = vec![(1, 1); r];
            gaps[0] = (d_a, d_b);
            gaps[pos] = (d_b, d_a);
            for sigma in 0..h {
                let Ok(emb) = FaceEmbedding::new(h, ladder_faces(h, &gaps, sigma)) else {
                    continue;
                };
                if emb.is_clean() {
                    return Ok(emb);
                }
                fallback.get_or_insert(emb);
            }
        }
    }
    fallback.ok_or(ExtremalError::Infeasible { squares, t })
}

/// Glues a `K_{k-1}` into every face of `emb`, joined to all of the face's
/// vertices: `r(k-2) + g/2` vertices and `r C(k-1,2) + (k - 1/2) g` edges.
pub fn truss_from_embedding(emb: &FaceEmbedding, k: u32) -> Result<Construction> {
    if k < 3 {
        return Err(invalid("k", k as u64, "must be at least 3"));
    }
    let h = emb.vertex_count() as Vertex;
    let mut edges: Vec<(Vertex, Vertex)> = emb.edge_face_incidence().keys().copied().collect();
    let mut next = h;
    for walk in emb.faces() {
        let clique: Vec<Vertex> = (next..next + k - 1).collect();
        next += k - 1;
        push_clique(&mut edges, &clique);
        for &x in &clique {
            edges.extend(walk.iter().map(|&v| (v, x)));
        }
    }
    let graph = Graph::from_edges(next as usize, edges).expect("face cliques are disjoint");
    let (r, g) = (emb.faces().len() as u64, emb.total_face_length() as u64);
    let k = k as u64;
    Audit::new(
        format!("torus-critical k={k} faces={:?}", emb.face_lengths()),
        r * (k - 2) + g / 2,
    )
    .edges(r * choose2(k - 1) + (k - 1) * g + g / 2)
    .truss(k as u32)
    .finish(graph)
}

/// `2k m <= n(k^2 + 5k - 2) + 20k^3`, i.e. `m <= n(k/2 + 5/2 - 1/k) + 10k^2`.
pub fn critical_bound(k: u32, n: u32) -> u64 {
    let (k, n) = (k as u64, n as u64);
    (n * (k * k + 5 * k - 2) + 20 * k * k * k) / (2 * k)
}

/// A critical `k`-truss on `n >= k + 4` vertices with at most
/// [`critical_bound`] edges.
///
/// `k = 2` uses [`critical_2truss`] and `n <= 2k` the suspension ladder.
/// Otherwise `n = ik + j` and the graph comes from a torus embedding with two
/// `(j+4)`-faces and `i-2` squares; when no clean embedding exists the ladder
/// is used instead and the receipt says so.
pub fn critical_truss(k: u32, n: u32) -> Result<Construction> {
    if k < 2 {
        return Err(invalid("k", k as u64, "must be at least 2"));
    }
    if n < k + 4 {
        return Err(invalid("n", n as u64, "must be at least k + 4"));
    }
    let mut notes = Vec::new();
    let graph = if k == 2 {
        notes.push("method: critical 2-truss".to_string());
        critical_2truss(n)?.graph
    } else if n <= 2 * k {
        notes.push("method: suspension ladder".to_string());
        ladder_graph(k, n)?
    } else {
        let (i, j) = ((n / k) as usize, (n % k) as usize);
        match torus_embedding(i - 2, j + 4) {
            Ok(emb) if emb.is_clean() => {
                notes.push(format!("method: torus embedding i={i} j={j}"));
                truss_from_embedding(&emb, k)?.graph
            }
            Ok(_) => {
                notes.push(format!(
                    "method: suspension ladder (fallback: no clean torus embedding for i={i} j={j})"
                ));
                ladder_graph(k, n)?
            }
            Err(ExtremalError::Infeasible { .. }) => {
                notes.push(format!(
                    "method: suspension ladder (fallback: torus embedding infeasible for i={i} j={j})"
                ));
                ladder_graph(k, n)?
            }
            Err(e) => return Err(e),
        }
    };
    let mut audit = Audit::new(format!("critical k={k} n={n}"), n as u64)
        .at_most(critical_bound(k, n))
        .truss(k);
    audit.notes = notes;
    audit.finish(graph)
}

/// Whether [`critical_truss`] used the torus construction.
pub fn used_fallback(receipt: &ConstructionReceipt) -> bool {
    receipt.notes.iter().any(|n| n.contains("fallback"))
}
