//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Vertices are dense indices `0..n`. The 1-based identifier used by the
//! witness tables is [`Graph::witness_id`], so that an identifier sum of zero
//! always means "no vertex". Edges carry dense ids `0..m`, assigned in
//! ascending `(min endpoint, max endpoint)` order.

mod degeneracy;
mod edge_set;
pub mod families;
mod io;
mod ops;

pub use degeneracy::{degeneracy, DegeneracyReport};
pub use edge_set::EdgeSet;
pub use io::{parse_edge_list, parse_edge_list_with, write_edge_list, ParseOptions};
pub use ops::{
    clustering_coefficient, connected_components, contract, induced_by_edges,
    induced_by_vertices, EdgeComponents, Subgraph,
};
pub(crate) use degeneracy::min_degree_sum;
pub(crate) use ops::components_of_mask;

use std::fmt;

use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type Vertex = u32;
/// Dense edge index in `0..m`.
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}self-loop on vertex {label}", line_prefix(*.line))]
    SelfLoop { line: Option<usize>, label: String },
    #[error("{}duplicate edge {u} {v}", line_prefix(*.line))]
    DuplicateEdge {
        line: Option<usize>,
        u: String,
        v: String,
    },
    #[error("line {line}: isolated vertex {label}")]
    IsolatedVertex { line: usize, label: String },
    #[error("vertex {0} out of range")]
    UnknownVertex(Vertex),
    #[error("edge {0} out of range")]
    UnknownEdge(EdgeId),
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
    #[error("clustering coefficient undefined for vertex {vertex} of degree {degree}")]
    DegreeTooSmall { vertex: Vertex, degree: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

fn line_prefix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

/// Undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
    neighbor_edges: Vec<EdgeId>,
    endpoints: Vec<(Vertex, Vertex)>,
    labels: Vec<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("edges", &self.endpoints)
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices labelled `1..=n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Graph with explicit external labels, one per vertex.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = labels.len();
        let mut endpoints = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: None,
                    label: labels[u as usize].clone(),
                });
            }
            endpoints.push((u.min(v), u.max(v)));
        }
        endpoints.sort_unstable();
        if let Some(w) = endpoints.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                line: None,
                u: labels[w[0].0 as usize].clone(),
                v: labels[w[0].1 as usize].clone(),
            });
        }
        Ok(Self::from_sorted_unique(labels, endpoints))
    }

    /// Builds the adjacency arrays. `endpoints` must be sorted, normalized and
    /// free of duplicates and loops.
    pub(crate) fn from_sorted_unique(labels: Vec<String>, endpoints: Vec<(Vertex, Vertex)>) -> Self {
        let n = labels.len();
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &endpoints {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0; 2 * endpoints.len()];
        let mut neighbor_edges = vec![0; 2 * endpoints.len()];
        // Edges are sorted by (u, v), so appending in edge order leaves every
        // list sorted: for vertex x, neighbours below x arrive (as the larger
        // endpoint) in ascending order of the smaller endpoint, before any
        // edge where x is the smaller endpoint.
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            neighbors[cursor[u]] = v as Vertex;
            neighbor_edges[cursor[u]] = e as EdgeId;
            cursor[u] += 1;
            neighbors[cursor[v]] = u as Vertex;
            neighbor_edges[cursor[v]] = e as EdgeId;
            cursor[v] += 1;
        }
        let g = Graph {
            offsets,
            neighbors,
            neighbor_edges,
            endpoints,
            labels,
        };
        debug_assert!(g
            .vertices()
            .all(|v| g.neighbors(v).windows(2).all(|w| w[0] < w[1])));
        g
    }

    pub fn empty() -> Self {
        Self::from_sorted_unique(Vec::new(), Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.endpoints.len()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.neighbor_edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Endpoints `(u, v)` with `u < v`.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.endpoints[e as usize]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (Vertex, Vertex)> + '_ {
        self.endpoints.iter().copied()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Edge id of `(u, v)`, by binary search in the shorter list.
    #[inline]
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        let list = self.neighbors(a);
        list.binary_search(&b)
            .ok()
            .map(|i| self.incident_edges(a)[i])
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// 1-based identifier used for witness sums.
    #[inline]
    pub fn witness_id(v: Vertex) -> u64 {
        v as u64 + 1
    }

    /// Inverse of [`Graph::witness_id`], if in range.
    #[inline]
    pub fn vertex_of_witness_id(&self, id: u64) -> Option<Vertex> {
        (id >= 1 && id <= self.n() as u64).then(|| (id - 1) as Vertex)
    }

    /// Endpoint that a triangle scan should iterate: the smaller static
    /// degree, ties broken by the smaller id. Returns `(scan, other)`.
    #[inline]
    pub fn scan_order(&self, e: EdgeId) -> (Vertex, Vertex) {
        let (u, v) = self.endpoints(e);
        if self.degree(v) < self.degree(u) {
            (v, u)
        } else {
            (u, v)
        }
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`; labels travel with
    /// their vertices.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        let n = self.n();
        if perm.len() != n {
            return Err(GraphError::LabelCount {
                labels: perm.len(),
                n,
            });
        }
        let mut labels = vec![String::new(); n];
        let mut seen = vec![false; n];
        for (v, &p) in perm.iter().enumerate() {
            if p as usize >= n || seen[p as usize] {
                return Err(GraphError::UnknownVertex(p));
            }
            seen[p as usize] = true;
            labels[p as usize] = self.labels[v].clone();
        }
        let edges = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]));
        Graph::with_labels(labels, edges)
    }

    /// Copy with every label replaced by `1..=n`.
    pub fn renumbered(&self) -> Graph {
        let labels = (1..=self.n()).map(|i| i.to_string()).collect();
        Graph::from_sorted_unique(labels, self.endpoints.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(4, 0), (2, 0), (1, 3), (0, 1), (3, 4), (2, 4)]).unwrap();
        let mut deg_sum = 0;
        for v in g.vertices() {
            let ns = g.neighbors(v);
            assert!(ns.windows(2).all(|w| w[0] < w[1]));
            for (&w, &e) in ns.iter().zip(g.incident_edges(v)) {
                assert!(g.neighbors(w).contains(&v));
                let (a, b) = g.endpoints(e);
                assert_eq!((a, b), (v.min(w), v.max(w)));
            }
            deg_sum += g.degree(v);
        }
        assert_eq!(deg_sum, 2 * g.m());
        let ids: Vec<_> = g.edges().collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Graph::from_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::UnknownVertex(2))
        ));
    }

    #[test]
    fn edge_lookup() {
        let g = families::complete(4);
        for (e, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(e as EdgeId));
            assert_eq!(g.edge_id(v, u), Some(e as EdgeId));
        }
        let p = families::path(4);
        assert_eq!(p.edge_id(0, 2), None);
    }

    #[test]
    fn witness_ids_are_one_based() {
        let g = families::complete(3);
        assert_eq!(Graph::witness_id(0), 1);
        assert_eq!(g.vertex_of_witness_id(3), Some(2));
        assert_eq!(g.vertex_of_witness_id(0), None);
        assert_eq!(g.vertex_of_witness_id(4), None);
    }
}
