use num_rational::Ratio;

use super::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub degeneracy: usize,
    /// Min-degree elimination order; each vertex has at most `degeneracy`
    /// neighbours later in the order.
    pub elimination_order: Vec<Vertex>,
    /// `(1/m) * sum over edges of min(d(u), d(v))`; zero for an edgeless graph.
    pub average_degeneracy: Ratio<u64>,
}

impl DegeneracyReport {
    /// Position of every vertex in the elimination order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.elimination_order.len()];
        for (i, &v) in self.elimination_order.iter().enumerate() {
            pos[v as usize] = i;
        }
        pos
    }
}

/// Sum over edges of `min(d(u), d(v))`.
pub(crate) fn min_degree_sum(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| g.degree(u).min(g.degree(v)) as u64)
        .sum()
}

/// Degeneracy by min-degree peeling with a bucket queue (Matula-Beck).
pub fn degeneracy(g: &Graph) -> DegeneracyReport {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // vert holds vertices sorted by current degree, bin[d] is the first slot
    // of degree d, pos[v] is v's slot.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let c = *b;
        *b = start;
        start += c;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0 as Vertex; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v as Vertex;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    let mut removed = vec![false; n];
    let mut best = 0;
    for i in 0..n {
        let v = vert[i] as usize;
        best = best.max(deg[v]);
        removed[v] = true;
        for &w in g.neighbors(v as Vertex) {
            let w = w as usize;
            if removed[w] || deg[w] <= deg[v] {
                continue;
            }
            // Swap w with the first vertex of its bucket, then shrink the bucket.
            let dw = deg[w];
            let pw = pos[w];
            let first = bin[dw];
            let u = vert[first] as usize;
            if u != w {
                vert.swap(pw, first);
                pos[u] = pw;
                pos[w] = first;
            }
            bin[dw] += 1;
            deg[w] -= 1;
        }
    }

    let average_degeneracy = if g.m() == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(min_degree_sum(g), g.m() as u64)
    };
    DegeneracyReport {
        degeneracy: best,
        elimination_order: vert,
        average_degeneracy,
    }
}
