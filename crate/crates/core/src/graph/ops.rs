use num_rational::Ratio;

use super::{EdgeId, EdgeSet, Graph, GraphError, Vertex};

/// A subgraph together with the maps back into its parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertex_map[v]` is the parent vertex of subgraph vertex `v`.
    pub vertex_map: Vec<Vertex>,
    /// `edge_map[e]` is the parent edge of subgraph edge `e`.
    pub edge_map: Vec<EdgeId>,
}

/// `G[U]`: vertex set `U`, keeping every edge with both ends in `U`.
pub fn induced_by_vertices(g: &Graph, vertices: &[Vertex]) -> Result<Subgraph, GraphError> {
    let mut keep: Vec<Vertex> = vertices.to_vec();
    if let Some(&bad) = keep.iter().find(|&&v| v as usize >= g.n()) {
        return Err(GraphError::UnknownVertex(bad));
    }
    keep.sort_unstable();
    keep.dedup();
    let mut local = vec![Vertex::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        local[v as usize] = i as Vertex;
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for (e, (u, v)) in g.edges().enumerate() {
        let (a, b) = (local[u as usize], local[v as usize]);
        if a != Vertex::MAX && b != Vertex::MAX {
            edges.push((a, b));
            edge_map.push(e as EdgeId);
        }
    }
    let labels = keep.iter().map(|&v| g.label(v).to_string()).collect();
    // Local ids are monotone in parent ids, so edge order is preserved.
    Ok(Subgraph {
        graph: Graph::from_sorted_unique(labels, edges),
        vertex_map: keep,
        edge_map,
    })
}

/// `G(L)`: edge set `L` on the endpoints of `L`, without isolated vertices.
pub fn induced_by_edges(g: &Graph, edges: &EdgeSet) -> Result<Subgraph, GraphError> {
    if let Some(bad) = edges.iter().find(|&e| e as usize >= g.m()) {
        return Err(GraphError::UnknownEdge(bad));
    }
    let mut used = vec![false; g.n()];
    for e in edges.iter() {
        let (u, v) = g.endpoints(e);
        used[u as usize] = true;
        used[v as usize] = true;
    }
    let vertex_map: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| used[v as usize]).collect();
    let mut local = vec![Vertex::MAX; g.n()];
    for (i, &v) in vertex_map.iter().enumerate() {
        local[v as usize] = i as Vertex;
    }
    let local_edges = edges
        .iter()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (local[u as usize], local[v as usize])
        })
        .collect();
    let labels = vertex_map.iter().map(|&v| g.label(v).to_string()).collect();
    Ok(Subgraph {
        graph: Graph::from_sorted_unique(labels, local_edges),
        vertex_map,
        edge_map: edges.as_slice().to_vec(),
    })
}

/// `G * H`: disjoint union with `g_vertex` and `h_vertex` identified.
///
/// Vertices of `G` keep their indices; the remaining vertices of `H` follow in
/// order. The result is relabelled `1..=n`.
pub fn contract(g: &Graph, h: &Graph, g_vertex: Vertex, h_vertex: Vertex) -> Result<Graph, GraphError> {
    if g_vertex as usize >= g.n() {
        return Err(GraphError::UnknownVertex(g_vertex));
    }
    if h_vertex as usize >= h.n() {
        return Err(GraphError::UnknownVertex(h_vertex));
    }
    let offset = g.n() as Vertex;
    let map = |x: Vertex| -> Vertex {
        match x.cmp(&h_vertex) {
            std::cmp::Ordering::Equal => g_vertex,
            std::cmp::Ordering::Less => offset + x,
            std::cmp::Ordering::Greater => offset + x - 1,
        }
    };
    let n = g.n() + h.n() - 1;
    let edges = g.edges().chain(h.edges().map(|(u, v)| (map(u), map(v))));
    // Disjoint inputs cannot collide; with_labels still rejects a parallel edge.
    Graph::from_edges(n, edges)
}

/// Edge partition into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeComponents {
    pub count: usize,
    /// Component id per edge; ids are numbered by their smallest edge id.
    pub component_of_edge: Vec<usize>,
}

impl EdgeComponents {
    /// Edge ids of every component, in component order.
    pub fn groups(&self) -> Vec<Vec<EdgeId>> {
        let mut groups = vec![Vec::new(); self.count];
        for (e, &c) in self.component_of_edge.iter().enumerate() {
            if c != usize::MAX {
                groups[c].push(e as EdgeId);
            }
        }
        groups
    }
}

pub fn connected_components(g: &Graph) -> EdgeComponents {
    components_of_mask(g, None)
}

/// Components of the subgraph made of edges whose mask bit is set; edges
/// outside the mask get `usize::MAX`.
pub(crate) fn components_of_mask(g: &Graph, mask: Option<&[bool]>) -> EdgeComponents {
    let alive = |e: EdgeId| mask.is_none_or(|m| m[e as usize]);
    let mut comp = vec![usize::MAX; g.m()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..g.m() as EdgeId {
        if !alive(start) || comp[start as usize] != usize::MAX {
            continue;
        }
        comp[start as usize] = count;
        let (u, v) = g.endpoints(start);
        stack.extend([u, v]);
        while let Some(x) = stack.pop() {
            for (&y, &e) in g.neighbors(x).iter().zip(g.incident_edges(x)) {
                if alive(e) && comp[e as usize] == usize::MAX {
                    comp[e as usize] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    EdgeComponents {
        count,
        component_of_edge: comp,
    }
}

/// Triangles through `v`, counted by neighbour-list intersection.
fn vertex_triangles(g: &Graph, v: Vertex) -> u64 {
    let nv = g.neighbors(v);
    let twice: usize = nv
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|w| nv.binary_search(w).is_ok()).count())
        .sum();
    (twice / 2) as u64
}

/// `cc(v) = triangles(v) / C(d(v), 2)`, exactly.
pub fn clustering_coefficient(g: &Graph, v: Vertex) -> Result<Ratio<u64>, GraphError> {
    if v as usize >= g.n() {
        return Err(GraphError::UnknownVertex(v));
    }
    let d = g.degree(v);
    if d < 2 {
        return Err(GraphError::DegreeTooSmall { vertex: v, degree: d });
    }
    let pairs = (d * (d - 1) / 2) as u64;
    Ok(Ratio::new(vertex_triangles(g, v), pairs))
}
