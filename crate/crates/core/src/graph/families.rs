//! Standard graph families used by tests, benchmarks and the generators.

use rand::Rng;

use super::{Graph, Vertex};

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            edges.push((u, v));
        }
    }
    Graph::from_sorted_unique(numeric_labels(n), edges)
}

/// `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges = (0..n as Vertex).map(|i| (i, (i + 1) % n as Vertex));
    Graph::from_edges(n, edges).expect("cycle is simple")
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges = (1..n as Vertex).map(|i| (i - 1, i));
    Graph::from_edges(n, edges).expect("path is simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as Vertex).map(|i| (0, i))).expect("star is simple")
}

/// Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, edges).expect("petersen is simple")
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("bowtie is simple")
}

/// Vertex-disjoint union; `b`'s vertices follow `a`'s.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n() as Vertex;
    let edges = a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off)));
    Graph::from_edges(a.n() + b.n(), edges).expect("disjoint union is simple")
}

/// Erdős-Rényi `G(n, p)`; isolated vertices are kept.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique(numeric_labels(n), edges)
}

pub(crate) fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes() {
        assert_eq!(complete(6).m(), 15);
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(path(4).m(), 3);
        assert_eq!(star(5).m(), 5);
        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert_eq!(disjoint_union(&complete(4), &complete(4)).m(), 12);
    }

    #[test]
    fn gnp_is_seeded() {
        let a = gnp(30, 0.3, &mut ChaCha8Rng::seed_from_u64(7));
        let b = gnp(30, 0.3, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.m() > 0);
    }
}
