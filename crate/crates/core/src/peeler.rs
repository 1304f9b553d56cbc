//! Full truss decomposition by threshold peeling.
//!
//! Instead of keeping edges ordered by residual triangle count, each round `k`
//! rescans an unordered candidate list for edges whose count has reached
//! `k - 1` and peels them through a stack. The candidate list shrinks by
//! swap-removal during the scan, so its total traversal over all rounds stays
//! within `sum_e (tau(e) + 1) + m`.

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, Graph};
use crate::labels::TrussLabels;
use crate::triangles::triangle_counts;

/// Residual-count value of an edge that has been peeled.
pub const REMOVED: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeelError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the truncation bound {truncated_at} of the labels")]
    AboveTruncation { k: u32, truncated_at: u32 },
    #[error("labels cover {labels} edges but the graph has {m}")]
    LabelMismatch { labels: usize, m: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct PeelOptions {
    /// Emit `tau = 0` for triangle-free edges during the first scan instead
    /// of routing them through the stack.
    pub round_one_shortcut: bool,
    /// Recompute residual counts from scratch at round boundaries and assert
    /// the loop invariants. Defaults to on in debug builds.
    pub check_invariants: bool,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions {
            round_one_shortcut: true,
            check_invariants: cfg!(debug_assertions),
        }
    }
}

/// Work counters of one decomposition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct PeelStats {
    pub rounds: u32,
    pub stack_pushes: u64,
    /// Total candidate-list entries visited by round scans.
    pub scan_length: u64,
    /// Neighbour-list entries visited while peeling stacked edges.
    pub neighbor_scans: u64,
}

/// Residual triangle counts, the pending stack and the candidate list.
#[derive(Debug, Clone)]
pub struct TriangleState {
    delta: Vec<u32>,
    stack: Vec<EdgeId>,
    scan_list: Vec<EdgeId>,
    residual: usize,
    pushed: Vec<bool>,
}

impl TriangleState {
    pub fn new(delta: Vec<u32>) -> Self {
        let m = delta.len();
        TriangleState {
            residual: m,
            scan_list: (0..m as EdgeId).collect(),
            stack: Vec::new(),
            pushed: vec![false; m],
            delta,
        }
    }

    #[inline]
    pub fn delta(&self, e: EdgeId) -> u32 {
        self.delta[e as usize]
    }

    #[inline]
    pub fn is_residual(&self, e: EdgeId) -> bool {
        self.delta[e as usize] != REMOVED
    }

    pub fn residual_count(&self) -> usize {
        self.residual
    }

    pub fn stack(&self) -> &[EdgeId] {
        &self.stack
    }

    pub(crate) fn push(&mut self, e: EdgeId, stats: &mut PeelStats) {
        debug_assert!(!self.pushed[e as usize], "edge {e} stacked twice");
        self.pushed[e as usize] = true;
        self.stack.push(e);
        stats.stack_pushes += 1;
    }

    pub(crate) fn pop(&mut self) -> Option<EdgeId> {
        self.stack.pop()
    }

    pub(crate) fn mark_removed(&mut self, e: EdgeId) {
        debug_assert!(self.is_residual(e));
        self.delta[e as usize] = REMOVED;
        self.residual -= 1;
    }

    /// Decrements a residual count, stacking the edge when it reaches `k - 1`.
    #[inline]
    pub(crate) fn decrement(&mut self, f: EdgeId, k: u32, stats: &mut PeelStats) {
        let d = &mut self.delta[f as usize];
        *d -= 1;
        if *d == k - 1 {
            self.push(f, stats);
        }
    }

    /// Decrements a residual count without touching the stack.
    #[inline]
    pub(crate) fn decrement_quiet(&mut self, f: EdgeId) {
        self.delta[f as usize] -= 1;
    }

    /// One pass over the candidate list for round `k`: stacks edges with count
    /// `k - 1` and swap-removes peeled entries. With `emit_free` set (round 1
    /// shortcut), triangle-free edges are peeled on the spot and reported.
    pub(crate) fn scan_round(
        &mut self,
        k: u32,
        stats: &mut PeelStats,
        mut emit_free: Option<&mut dyn FnMut(EdgeId)>,
    ) {
        let mut i = 0;
        stats.scan_length += self.scan_list.len() as u64;
        while i < self.scan_list.len() {
            let e = self.scan_list[i];
            let d = self.delta[e as usize];
            if d == REMOVED {
                self.scan_list.swap_remove(i);
                continue;
            }
            if d == 0 && k == 1 {
                if let Some(emit) = emit_free.as_deref_mut() {
                    self.mark_removed(e);
                    emit(e);
                    self.scan_list.swap_remove(i);
                    continue;
                }
            }
            if d == k - 1 {
                self.push(e, stats);
            }
            i += 1;
        }
    }

    /// Asserts the round invariants against counts recomputed from scratch:
    /// recorded counts are exact for the residual graph, every residual edge
    /// below `k` is stacked, and every stacked edge is residual and below `k`.
    pub fn assert_invariants(&self, g: &Graph, k: u32) {
        let fresh = residual_counts(g, |e| self.is_residual(e));
        let mut on_stack = vec![false; g.m()];
        for &e in &self.stack {
            assert!(self.is_residual(e), "stacked edge {e} is not residual");
            assert!(self.delta(e) < k, "stacked edge {e} has count {} >= {k}", self.delta(e));
            on_stack[e as usize] = true;
        }
        for e in 0..g.m() as EdgeId {
            if !self.is_residual(e) {
                continue;
            }
            assert_eq!(self.delta(e), fresh[e as usize], "stale count on edge {e}");
            assert!(
                self.delta(e) >= k || on_stack[e as usize],
                "edge {e} has count {} < {k} but is not stacked",
                self.delta(e)
            );
        }
    }
}

/// Triangle counts of the subgraph formed by the edges accepted by `alive`;
/// dead edges get 0.
pub(crate) fn residual_counts<F: Fn(EdgeId) -> bool>(g: &Graph, alive: F) -> Vec<u32> {
    let mut out = vec![0u32; g.m()];
    for e in 0..g.m() as EdgeId {
        if !alive(e) {
            continue;
        }
        let (u, v) = g.scan_order(e);
        let mut c = 0;
        for (&w, &uw) in g.neighbors(u).iter().zip(g.incident_edges(u)) {
            if alive(uw) {
                if let Some(vw) = g.edge_id(v, w) {
                    if alive(vw) {
                        c += 1;
                    }
                }
            }
        }
        out[e as usize] = c;
    }
    out
}

/// Trussness of every edge with default options.
pub fn truss_decomposition(g: &Graph) -> TrussLabels {
    truss_decomposition_with(g, PeelOptions::default()).0
}

/// Trussness of every edge plus work counters.
pub fn truss_decomposition_with(g: &Graph, opts: PeelOptions) -> (TrussLabels, PeelStats) {
    let m = g.m();
    let counts = triangle_counts(g).per_edge;
    let max_delta = counts.iter().copied().max().unwrap_or(0);
    let round_bound = isqrt(2 * m as u64).min(max_delta as u64 + 1) as u32;

    let mut state = TriangleState::new(counts);
    let mut tau = vec![0u32; m];
    let mut stats = PeelStats::default();

    let mut k = 1u32;
    while state.residual_count() > 0 {
        assert!(
            k <= round_bound,
            "round {k} exceeds bound {round_bound} with {} edges left",
            state.residual_count()
        );
        stats.rounds = k;
        if opts.round_one_shortcut && k == 1 {
            // tau is already zero-initialized
            state.scan_round(k, &mut stats, Some(&mut |_| {}));
        } else {
            state.scan_round(k, &mut stats, None);
        }
        if opts.check_invariants {
            state.assert_invariants(g, k);
        }
        while let Some(e) = state.pop() {
            peel_edge(g, &mut state, e, k, &mut stats);
            tau[e as usize] = k - 1;
        }
        if opts.check_invariants {
            state.assert_invariants(g, k);
        }
        k += 1;
    }
    (TrussLabels::exact(tau), stats)
}

/// Removes `e` from the residual graph and updates the two other edges of
/// every residual triangle through it.
fn peel_edge(g: &Graph, state: &mut TriangleState, e: EdgeId, k: u32, stats: &mut PeelStats) {
    let (u, v) = g.scan_order(e);
    state.mark_removed(e);
    stats.neighbor_scans += g.degree(u) as u64;
    for (&w, &uw) in g.neighbors(u).iter().zip(g.incident_edges(u)) {
        if !state.is_residual(uw) {
            continue;
        }
        let Some(vw) = g.edge_id(v, w) else { continue };
        if !state.is_residual(vw) {
            continue;
        }
        state.decrement(uw, k, stats);
        state.decrement(vw, k, stats);
    }
}

/// Integer square root, rounded down.
pub(crate) fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Threshold peeler over a fixed graph: repeatedly deletes edges with fewer
/// than `k` residual triangles until a fixed point.
#[derive(Debug, Clone)]
pub struct ThresholdPeel<'g> {
    g: &'g Graph,
    k: u32,
    count: Vec<u32>,
    alive: Vec<bool>,
    queue: Vec<EdgeId>,
}

impl<'g> ThresholdPeel<'g> {
    /// Peels the whole graph to its maximal `k`-truss edge set.
    pub fn new(g: &'g Graph, k: u32) -> Self {
        let count = triangle_counts(g).per_edge;
        let mut p = ThresholdPeel {
            g,
            k,
            count,
            alive: vec![true; g.m()],
            queue: Vec::new(),
        };
        for e in 0..g.m() as EdgeId {
            if p.count[e as usize] < k {
                p.queue.push(e);
            }
        }
        p.drain();
        p
    }

    /// Deletes `e` (if alive) and peels to the new fixed point.
    pub fn remove(&mut self, e: EdgeId) {
        if self.alive[e as usize] {
            self.queue.push(e);
            self.drain();
        }
    }

    fn drain(&mut self) {
        while let Some(e) = self.queue.pop() {
            if !self.alive[e as usize] {
                continue;
            }
            self.alive[e as usize] = false;
            let (u, v) = self.g.scan_order(e);
            for (&w, &uw) in self.g.neighbors(u).iter().zip(self.g.incident_edges(u)) {
                if !self.alive[uw as usize] {
                    continue;
                }
                let Some(vw) = self.g.edge_id(v, w) else { continue };
                if !self.alive[vw as usize] {
                    continue;
                }
                for f in [uw, vw] {
                    let c = &mut self.count[f as usize];
                    *c -= 1;
                    if *c + 1 == self.k {
                        self.queue.push(f);
                    }
                }
            }
        }
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::from_mask(&self.alive)
    }
}

/// The maximal edge set whose edge-induced subgraph has every edge in at
/// least `k` triangles, by direct peeling.
pub fn max_k_truss(g: &Graph, k: u32) -> EdgeSet {
    ThresholdPeel::new(g, k).edge_set()
}

/// Connected components of the edges with `tau >= k`, each as an edge set,
/// ordered by smallest edge id.
pub fn k_truss_components(g: &Graph, k: u32, labels: &TrussLabels) -> Result<Vec<EdgeSet>, PeelError> {
    if k == 0 {
        return Err(PeelError::ZeroK);
    }
    if labels.len() != g.m() {
        return Err(PeelError::LabelMismatch {
            labels: labels.len(),
            m: g.m(),
        });
    }
    if let Some(t) = labels.truncated_at() {
        if k > t {
            return Err(PeelError::AboveTruncation { k, truncated_at: t });
        }
    }
    let mask: Vec<bool> = (0..g.m() as EdgeId).map(|e| labels.tau(e) >= k).collect();
    let comps = crate::graph::components_of_mask(g, Some(&mask));
    Ok(comps
        .groups()
        .into_iter()
        .map(|ids| EdgeSet::from_ids(ids, g.m()).expect("component ids are in range"))
        .collect())
}
