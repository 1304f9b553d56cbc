//! Brute-force oracles and checkers for the combinatorial truss bounds.

use std::fmt::{self, Write as _};

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{components_of_mask, degeneracy, min_degree_sum, EdgeId, Graph, Vertex};
use crate::labels::TrussLabels;
use crate::peeler::ThresholdPeel;
use crate::triangles::{enumerate_triangles, triangle_counts, TriangleCounts};

/// Default vertex cap for the cubic oracles.
pub const DEFAULT_CAP: usize = 200;
/// Largest edge count accepted by [`critical_by_subsets`].
pub const SUBSET_EDGE_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("oracle refused: {n} vertices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("subset enumeration refused: {m} edges exceeds the cap of {cap}")]
    TooManyEdges { m: usize, cap: usize },
    #[error("labels are truncated; bound checks need exact trussness")]
    Truncated,
    #[error("{labels} labels for {m} edges")]
    LabelMismatch { labels: usize, m: usize },
}

/// Bitset adjacency rows, for the oracles.
struct BitAdjacency {
    words: usize,
    rows: Vec<u64>,
}

impl BitAdjacency {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitAdjacency {
            words,
            rows: vec![0; n * words],
        }
    }

    fn of(g: &Graph) -> Self {
        let mut a = Self::new(g.n());
        for (u, v) in g.edges() {
            a.set(u, v, true);
        }
        a
    }

    fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v as usize * self.words..(v as usize + 1) * self.words]
    }

    fn get(&self, u: Vertex, v: Vertex) -> bool {
        self.row(u)[v as usize / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: Vertex, v: Vertex, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.rows[a as usize * self.words + b as usize / 64];
            if on {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    fn common(&self, u: Vertex, v: Vertex) -> u32 {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), VerifyError> {
    if g.n() > cap {
        return Err(VerifyError::CapExceeded { n: g.n(), cap });
    }
    Ok(())
}

/// Triangle counts by testing every vertex triple.
pub fn brute_force_triangles(g: &Graph) -> Result<TriangleCounts, VerifyError> {
    brute_force_triangles_capped(g, DEFAULT_CAP)
}

pub fn brute_force_triangles_capped(g: &Graph, cap: usize) -> Result<TriangleCounts, VerifyError> {
    check_cap(g, cap)?;
    let n = g.n() as Vertex;
    let adj = BitAdjacency::of(g);
    let mut per_edge = vec![0u32; g.m()];
    let mut per_vertex = vec![0u64; g.n()];
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !adj.get(a, b) {
                continue;
            }
            for c in b + 1..n {
                if adj.get(a, c) && adj.get(b, c) {
                    total += 1;
                    for x in [a, b, c] {
                        per_vertex[x as usize] += 1;
                    }
                    for (x, y) in [(a, b), (a, c), (b, c)] {
                        per_edge[g.edge_id(x, y).unwrap() as usize] += 1;
                    }
                }
            }
        }
    }
    Ok(TriangleCounts {
        per_edge,
        per_vertex,
        total,
    })
}

/// Trussness by naive rounds: for each `k`, recount every residual edge from
/// scratch and drop those below `k` until nothing changes.
pub fn oracle_truss_decomposition(g: &Graph) -> Result<TrussLabels, VerifyError> {
    oracle_truss_decomposition_capped(g, DEFAULT_CAP)
}

pub fn oracle_truss_decomposition_capped(g: &Graph, cap: usize) -> Result<TrussLabels, VerifyError> {
    check_cap(g, cap)?;
    let mut adj = BitAdjacency::of(g);
    let mut tau = vec![0u32; g.m()];
    let mut residual: Vec<EdgeId> = (0..g.m() as EdgeId).collect();
    let mut k = 1;
    while !residual.is_empty() {
        loop {
            let (drop, keep): (Vec<EdgeId>, Vec<EdgeId>) = residual.iter().partition(|&&e| {
                let (u, v) = g.endpoints(e);
                adj.common(u, v) < k
            });
            if drop.is_empty() {
                break;
            }
            for e in drop {
                let (u, v) = g.endpoints(e);
                adj.set(u, v, false);
                tau[e as usize] = k - 1;
            }
            residual = keep;
        }
        k += 1;
    }
    Ok(TrussLabels::exact(tau))
}

/// Every edge lies in at least `k` triangles and no vertex is isolated. The
/// empty graph is not a truss.
pub fn is_k_truss(g: &Graph, k: u32) -> bool {
    if g.m() == 0 || g.has_isolated_vertex() {
        return false;
    }
    triangle_counts(g).per_edge.iter().all(|&c| c >= k)
}

/// A `k`-truss none of whose nonempty proper edge subsets induces a
/// `k`-truss. Since the maximal `k`-truss inside an edge set is unique and
/// monotone, it suffices that deleting any single edge peels everything away.
pub fn is_critical_k_truss(g: &Graph, k: u32) -> bool {
    if !is_k_truss(g, k) {
        return false;
    }
    let base = ThresholdPeel::new(g, k);
    (0..g.m() as EdgeId).all(|e| {
        let mut p = base.clone();
        p.remove(e);
        p.is_empty()
    })
}

/// Criticality by testing every nonempty proper edge subset.
pub fn critical_by_subsets(g: &Graph, k: u32) -> Result<bool, VerifyError> {
    let m = g.m();
    if m > SUBSET_EDGE_CAP {
        return Err(VerifyError::TooManyEdges {
            m,
            cap: SUBSET_EDGE_CAP,
        });
    }
    if !is_k_truss(g, k) {
        return Ok(false);
    }
    // Triangles as edge bitmasks, listed per edge.
    let mut by_edge: Vec<Vec<u32>> = vec![Vec::new(); m];
    enumerate_triangles(g, |t| {
        let ids = [
            g.edge_id(t.0, t.1).unwrap(),
            g.edge_id(t.0, t.2).unwrap(),
            g.edge_id(t.1, t.2).unwrap(),
        ];
        let mask = ids.iter().fold(0u32, |acc, &e| acc | 1 << e);
        for e in ids {
            by_edge[e as usize].push(mask);
        }
    });
    let full = (1u32 << m) - 1;
    for subset in 1..full {
        let is_truss = (0..m).filter(|&e| subset >> e & 1 == 1).all(|e| {
            by_edge[e].iter().filter(|&&t| t & subset == t).count() as u32 >= k
        });
        if is_truss {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which way a bound goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    AtMost,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
        }
    }
}

/// Where the tightest (or violating) instance of a check occurred.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: Vertex, label: String },
    Edge { edge: EdgeId, u: String, v: String },
    Component { index: usize, vertices: usize, edges: usize },
    Graph,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex { label, .. } => write!(f, "vertex {label}"),
            Witness::Edge { u, v, .. } => write!(f, "edge {u}-{v}"),
            Witness::Component { index, .. } => write!(f, "component {index}"),
            Witness::Graph => f.write_str("graph"),
        }
    }
}

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// The worst instance of one bound at one `k` (or globally when `k` is `None`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub k: Option<u32>,
    pub relation: Relation,
    #[serde(serialize_with = "ratio_str")]
    pub bound: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub observed: Ratio<i64>,
    pub passed: bool,
    pub witness: Witness,
}

impl BoundCheck {
    fn slack(&self) -> Ratio<i64> {
        match self.relation {
            Relation::AtLeast => self.observed - self.bound,
            Relation::AtMost => self.bound - self.observed,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BoundReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Records an instance, keeping only the one with least slack per
    /// `(name, k)`.
    fn record(
        &mut self,
        name: &'static str,
        k: Option<u32>,
        relation: Relation,
        bound: Ratio<i64>,
        observed: Ratio<i64>,
        witness: impl FnOnce() -> Witness,
    ) {
        let passed = match relation {
            Relation::AtLeast => observed >= bound,
            Relation::AtMost => observed <= bound,
        };
        let slack = match relation {
            Relation::AtLeast => observed - bound,
            Relation::AtMost => bound - observed,
        };
        if let Some(existing) = self.checks.iter_mut().find(|c| c.name == name && c.k == k) {
            if slack < existing.slack() {
                *existing = BoundCheck {
                    name,
                    k,
                    relation,
                    bound,
                    observed,
                    passed,
                    witness: witness(),
                };
            }
            return;
        }
        self.checks.push(BoundCheck {
            name,
            k,
            relation,
            bound,
            observed,
            passed,
            witness: witness(),
        });
    }

    /// Aligned plain-text table, one row per check.
    pub fn to_table(&self) -> String {
        let header = ["check", "k", "bound", "observed", "status", "witness"];
        let rows: Vec<[String; 6]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.name.to_string(),
                    c.k.map_or_else(|| "-".into(), |k| k.to_string()),
                    format!("{} {}", c.relation.symbol(), c.bound),
                    c.observed.to_string(),
                    if c.passed { "pass" } else { "FAIL" }.to_string(),
                    c.witness.to_string(),
                ]
            })
            .collect();
        let mut width = header.map(str::len);
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[&str]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    let _ = write!(s, "{cell:<w$}  ");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&header);
        for r in &rows {
            line(&r.each_ref().map(String::as_str));
        }
        out
    }
}

fn r(n: i64) -> Ratio<i64> {
    Ratio::from_integer(n)
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Checks the degree, size, clustering and triangle bounds inside every
/// `k`-truss-component for each `k` up to the maximum trussness, plus the
/// global trussness and degeneracy bounds.
pub fn bound_report(g: &Graph, labels: &TrussLabels) -> Result<BoundReport, VerifyError> {
    if labels.len() != g.m() {
        return Err(VerifyError::LabelMismatch {
            labels: labels.len(),
            m: g.m(),
        });
    }
    if !labels.all_exact() {
        return Err(VerifyError::Truncated);
    }
    let mut report = BoundReport::default();
    let vertex = |v: Vertex| Witness::Vertex {
        vertex: v,
        label: g.label(v).to_string(),
    };
    let edge = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        Witness::Edge {
            edge: e,
            u: g.label(u).to_string(),
            v: g.label(v).to_string(),
        }
    };

    // Each triangle with the trussness of its weakest edge: it survives in
    // the subgraph {tau >= k} exactly for k up to that value.
    let mut triangles: Vec<([Vertex; 3], EdgeId, u32)> = Vec::new();
    enumerate_triangles(g, |t| {
        let e = g.edge_id(t.0, t.1).unwrap();
        let level = [e, g.edge_id(t.0, t.2).unwrap(), g.edge_id(t.1, t.2).unwrap()]
            .iter()
            .map(|&f| labels.tau(f))
            .min()
            .unwrap();
        triangles.push(([t.0, t.1, t.2], e, level));
    });

    for k in 1..=labels.max_tau() {
        let mask: Vec<bool> = labels.values().iter().map(|&t| t >= k).collect();
        let comps = components_of_mask(g, Some(&mask));
        let mut degree = vec![0i64; g.n()];
        let mut comp_of_vertex = vec![usize::MAX; g.n()];
        let mut comp_edges = vec![0i64; comps.count];
        for (e, (u, v)) in g.edges().enumerate() {
            if mask[e] {
                let c = comps.component_of_edge[e];
                comp_edges[c] += 1;
                for x in [u, v] {
                    degree[x as usize] += 1;
                    comp_of_vertex[x as usize] = c;
                }
            }
        }
        let mut vertex_tri = vec![0i64; g.n()];
        let mut comp_tri = vec![0i64; comps.count];
        for (t, e, level) in &triangles {
            if *level >= k {
                for &x in t {
                    vertex_tri[x as usize] += 1;
                }
                comp_tri[comps.component_of_edge[*e as usize]] += 1;
            }
        }
        let mut comp_vertices = vec![0i64; comps.count];
        let k = k as i64;
        let kk = Some(k as u32);
        for v in g.vertices().filter(|&v| degree[v as usize] > 0) {
            comp_vertices[comp_of_vertex[v as usize]] += 1;
            let d = degree[v as usize];
            let t = vertex_tri[v as usize];
            report.record("min_degree", kk, Relation::AtLeast, r(k + 1), r(d), || vertex(v));
            report.record(
                "neighbourhood_edges",
                kk,
                Relation::AtLeast,
                r(choose2(k + 2)),
                r(d + t),
                || vertex(v),
            );
            let pairs = choose2(d).max(1);
            report.record(
                "clustering",
                kk,
                Relation::AtLeast,
                Ratio::new(choose2(k + 1), pairs),
                Ratio::new(t, pairs),
                || vertex(v),
            );
        }
        for c in 0..comps.count {
            let (nc, mc, tc) = (comp_vertices[c], comp_edges[c], comp_tri[c]);
            let comp = || Witness::Component {
                index: c,
                vertices: nc as usize,
                edges: mc as usize,
            };
            report.record("component_vertices", kk, Relation::AtLeast, r(k + 2), r(nc), comp);
            report.record(
                "component_edges",
                kk,
                Relation::AtLeast,
                Ratio::new((nc - 1) * (k + 2), 2),
                r(mc),
                comp,
            );
            report.record(
                "component_triangles",
                kk,
                Relation::AtLeast,
                Ratio::new((nc - 1) * (k + 2) * k, 6),
                r(tc),
                comp,
            );
        }
    }

    if g.m() > 0 {
        let m = g.m() as i64;
        let delta = degeneracy(g).degeneracy as i64;
        for e in 0..g.m() as EdgeId {
            let t = labels.tau(e) as i64;
            // tau <= sqrt(2m + 1/4) - 3/2, squared.
            report.record(
                "tau_sqrt_2m",
                None,
                Relation::AtMost,
                Ratio::new(8 * m + 1, 4),
                Ratio::new((2 * t + 3) * (2 * t + 3), 4),
                || edge(e),
            );
            report.record("tau_degeneracy", None, Relation::AtMost, r(delta - 1), r(t), || edge(e));
        }
        report.record(
            "average_degeneracy",
            None,
            Relation::AtMost,
            r(2 * delta),
            Ratio::new(min_degree_sum(g) as i64, m),
            || Witness::Graph,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, petersen, star};
    use crate::graph::{contract, families::gnp};
    use crate::peeler::truss_decomposition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn minus_edge(g: &Graph, u: Vertex, v: Vertex) -> Graph {
        let edges = g.edges().filter(|&e| e != (u.min(v), u.max(v)));
        Graph::from_edges(g.n(), edges).unwrap()
    }

    fn k4_chain() -> Graph {
        contract(&complete(4), &complete(4), 3, 0).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_triangles(&complete(6)).unwrap().total, 20);
        assert_eq!(brute_force_triangles(&cycle(5)).unwrap().total, 0);
        assert_eq!(
            brute_force_triangles(&complete(201)),
            Err(VerifyError::CapExceeded { n: 201, cap: 200 })
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = gnp(15, 0.5, &mut rng);
            assert_eq!(brute_force_triangles(&g).unwrap(), triangle_counts(&g));
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_truss_decomposition(&complete(5)).unwrap().values(), &[3; 10]);
        assert_eq!(oracle_truss_decomposition(&k4_chain()).unwrap().values(), &[2; 12]);
        assert_eq!(oracle_truss_decomposition(&star(4)).unwrap().values(), &[0; 4]);
    }

    #[test]
    fn truss_membership() {
        for k in 1..5 {
            let g = complete(k as usize + 2);
            assert!(is_k_truss(&g, k));
            assert!(!is_k_truss(&minus_edge(&g, 0, 1), k));
        }
        assert!(!is_k_truss(&Graph::empty(), 0));
        assert!(!is_k_truss(&petersen(), 1));
        assert!(is_k_truss(&petersen(), 0));
    }

    #[test]
    fn criticality_examples() {
        assert!(is_critical_k_truss(&complete(4), 2));
        assert!(!is_critical_k_truss(&k4_chain(), 2));
        assert!(is_critical_k_truss(&complete(3), 1));
        assert!(!is_critical_k_truss(&cycle(4), 1));
        assert_eq!(critical_by_subsets(&complete(4), 2), Ok(true));
        assert_eq!(critical_by_subsets(&k4_chain(), 2), Ok(false));
        assert_eq!(critical_by_subsets(&complete(3), 1), Ok(true));
        // K5 is a 1-truss containing the 1-truss K3.
        assert_eq!(critical_by_subsets(&complete(5), 1), Ok(false));
        assert!(!is_critical_k_truss(&complete(5), 1));
        assert!(matches!(critical_by_subsets(&complete(7), 5), Err(VerifyError::TooManyEdges { .. })));
    }

    fn check<'a>(rep: &'a BoundReport, name: &str, k: Option<u32>) -> &'a BoundCheck {
        rep.checks.iter().find(|c| c.name == name && c.k == k).unwrap()
    }

    #[test]
    fn k5_report() {
        let g = complete(5);
        let rep = bound_report(&g, &truss_decomposition(&g)).unwrap();
        assert!(rep.passed(), "{}", rep.to_table());
        let c = check(&rep, "tau_sqrt_2m", None);
        assert_eq!(c.bound, c.observed); // 3 = sqrt(20.25) - 1.5
        assert_eq!(check(&rep, "tau_degeneracy", None).slack(), r(0));
    }

    #[test]
    fn clique_chain_edges_are_tight() {
        let mut g = complete(4);
        for _ in 0..3 {
            g = contract(&g, &complete(4), g.n() as Vertex - 1, 0).unwrap();
        }
        let rep = bound_report(&g, &truss_decomposition(&g)).unwrap();
        assert!(rep.passed());
        let c = check(&rep, "component_edges", Some(2));
        assert_eq!(c.observed, c.bound);
        assert_eq!(c.observed, r(24));
    }

    #[test]
    fn violations_carry_witnesses() {
        let g = complete(4);
        let bogus = TrussLabels::exact(vec![3; 6]);
        let rep = bound_report(&g, &bogus).unwrap();
        assert!(!rep.passed());
        let f = check(&rep, "min_degree", Some(3));
        assert!(!f.passed);
        assert!(matches!(f.witness, Witness::Vertex { .. }));
        assert!(rep.to_table().contains("FAIL"));
    }

    #[test]
    fn report_rejects_truncated_labels() {
        let g = complete(5);
        let l = truss_decomposition(&g).clamped(2);
        assert_eq!(bound_report(&g, &l), Err(VerifyError::Truncated));
        assert!(matches!(
            bound_report(&g, &TrussLabels::exact(vec![])),
            Err(VerifyError::LabelMismatch { .. })
        ));
    }
}
