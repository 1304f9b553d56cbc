//! Truncated truss decomposition driven by randomized witness sums.
//!
//! `L` random vertex sets `X_l` are drawn with inclusion probability `q`. For
//! every edge `(u, v)` and set `l`, the table entry `S(e, l)` holds the sum of
//! the 1-based ids of residual common neighbours of `u` and `v` inside `X_l`.
//! Whenever exactly one such neighbour lies in `X_l`, the entry *is* its id,
//! so a peeled edge can usually list its residual triangles from its row
//! alone. When the row does not account for every triangle, a full vertex
//! scan takes over. Peeling order follows the same stack and candidate-list
//! rounds as [`crate::peeler`], stopping after round `k_trunc`.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::labels::TrussLabels;
use crate::peeler::{isqrt, PeelStats, TriangleState};

/// Default budget for the witness table, 4 GiB.
pub const DEFAULT_MEM_CAP: u64 = 4 << 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WitnessError {
    #[error("k_trunc must be at least 1")]
    ZeroK,
    #[error("inclusion probability {0} is outside (0, 1]")]
    BadProbability(f64),
    #[error("number of random sets must be at least 1")]
    NoSets,
    #[error("heavy/light exponent b = {b} is outside [{a}, 1]")]
    BadExponent { b: f64, a: f64 },
    #[error("witness structures need {needed} bytes, above the cap of {cap} bytes")]
    MemoryCap { needed: u64, cap: u64 },
    #[error("edge {0} is already removed")]
    EdgeRemoved(EdgeId),
    #[error("edge {0} out of range")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} has {expected} residual triangles but {got} were supplied")]
    IncompleteWitness { edge: EdgeId, expected: u32, got: usize },
    #[error("random set contains unknown vertex {0}")]
    UnknownVertex(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum InitMode {
    /// Per-edge common-neighbour intersection.
    #[default]
    Direct,
    /// Light vertices by incident edge pairs, heavy-only triangles by dense
    /// matrix products.
    Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessConfig {
    pub k_trunc: u32,
    pub seed: u64,
    /// Number of random sets; defaults to `ceil(10 * k_trunc * ln n)`.
    pub sets: Option<usize>,
    /// Inclusion probability; defaults to `1 / k_trunc`.
    pub prob: Option<f64>,
    /// Heavy/light exponent; defaults to `max(a, 2/3)` with `a = log_m k_trunc`.
    pub b: Option<f64>,
    pub init_mode: InitMode,
    pub mem_cap: u64,
}

impl WitnessConfig {
    pub fn new(k_trunc: u32) -> Self {
        WitnessConfig {
            k_trunc,
            seed: 0,
            sets: None,
            prob: None,
            b: None,
            init_mode: InitMode::Direct,
            mem_cap: DEFAULT_MEM_CAP,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_init(mut self, mode: InitMode) -> Self {
        self.init_mode = mode;
        self
    }

    /// Fills in defaults for `g` and validates every parameter.
    pub fn resolve(&self, g: &Graph) -> Result<ResolvedConfig, WitnessError> {
        let k = self.k_trunc;
        if k == 0 {
            return Err(WitnessError::ZeroK);
        }
        // Values above ceil(sqrt(2m)) are allowed: no edge reaches them, so
        // every label comes out exact.
        let m = g.m() as u64;
        let prob = self.prob.unwrap_or(1.0 / k as f64);
        if !(prob > 0.0 && prob <= 1.0) {
            return Err(WitnessError::BadProbability(prob));
        }
        let sets = match self.sets {
            Some(l) => l,
            None => default_sets(k, g.n()),
        };
        if sets == 0 {
            return Err(WitnessError::NoSets);
        }
        // Cutoffs above ceil(sqrt(2m)) behave like ceil(sqrt(2m)), which keeps
        // a in [0, 1].
        let a = if m > 1 {
            (k.min(ceil_sqrt(2 * m) as u32) as f64).ln() / (m as f64).ln()
        } else {
            0.0
        };
        let b = self.b.unwrap_or(a.max(2.0 / 3.0));
        if !(b >= a && b <= 1.0) {
            return Err(WitnessError::BadExponent { b, a });
        }
        let table_bytes = m * sets as u64 * std::mem::size_of::<u64>() as u64;
        let heavy_threshold = (m as f64).powf(1.0 - b);
        let matrix_bytes = match self.init_mode {
            InitMode::Direct => 0,
            InitMode::Matrix => {
                let h = g.vertices().filter(|&v| g.degree(v) as f64 > heavy_threshold).count() as u64;
                // product plus the two factors
                3 * h * h * std::mem::size_of::<u64>() as u64
            }
        };
        let needed = table_bytes + matrix_bytes;
        if needed > self.mem_cap {
            return Err(WitnessError::MemoryCap {
                needed,
                cap: self.mem_cap,
            });
        }
        Ok(ResolvedConfig {
            k_trunc: k,
            seed: self.seed,
            sets,
            prob,
            a,
            b,
            heavy_threshold,
            init_mode: self.init_mode,
        })
    }
}

/// `ceil(10 * k_trunc * ln n)`, at least 1.
pub fn default_sets(k_trunc: u32, n: usize) -> usize {
    let l = (10.0 * k_trunc as f64 * (n.max(1) as f64).ln()).ceil();
    (l as usize).max(1)
}

fn ceil_sqrt(x: u64) -> u64 {
    let r = isqrt(x);
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// Validated parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedConfig {
    pub k_trunc: u32,
    pub seed: u64,
    pub sets: usize,
    pub prob: f64,
    pub a: f64,
    pub b: f64,
    /// Vertices with degree above this are heavy.
    pub heavy_threshold: f64,
    pub init_mode: InitMode,
}

/// Result of listing the residual triangles of one edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnumerationOutcome {
    /// Third vertices of the residual triangles found.
    pub triangles: Vec<Vertex>,
    pub used_fallback: bool,
    /// Table entries that passed the range check and were tested.
    pub candidates_tested: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WitnessStats {
    pub enumerations: u64,
    pub fallbacks: u64,
    pub candidates_tested: u64,
    pub stack_pushes: u64,
    pub scan_length: u64,
}

impl WitnessStats {
    pub fn fallback_rate(&self) -> f64 {
        if self.enumerations == 0 {
            0.0
        } else {
            self.fallbacks as f64 / self.enumerations as f64
        }
    }
}

/// Random sets, witness-sum table and residual triangle counts.
#[derive(Debug, Clone)]
pub struct WitnessState<'g> {
    g: &'g Graph,
    sets: usize,
    members: Vec<Vec<Vertex>>,
    memberships: Vec<Vec<u32>>,
    /// `m x L`, row-major.
    table: Vec<u64>,
    tri: TriangleState,
    heavy: Vec<bool>,
    stamp: Vec<u32>,
    generation: u32,
    stats: WitnessStats,
}

impl<'g> WitnessState<'g> {
    /// Samples the random sets from `cfg.seed` and fills the table.
    pub fn init(g: &'g Graph, cfg: &ResolvedConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut members = vec![Vec::new(); cfg.sets];
        for set in members.iter_mut() {
            for v in g.vertices() {
                if rng.random_bool(cfg.prob) {
                    set.push(v);
                }
            }
        }
        Self::build(g, members, cfg.init_mode, cfg.heavy_threshold)
    }

    /// State over explicitly chosen sets. `heavy_threshold` only matters for
    /// [`InitMode::Matrix`].
    pub fn with_sets(
        g: &'g Graph,
        sets: Vec<Vec<Vertex>>,
        mode: InitMode,
        heavy_threshold: f64,
    ) -> Result<Self, WitnessError> {
        if sets.is_empty() {
            return Err(WitnessError::NoSets);
        }
        let mut sets = sets;
        for s in sets.iter_mut() {
            if let Some(&bad) = s.iter().find(|&&v| v as usize >= g.n()) {
                return Err(WitnessError::UnknownVertex(bad));
            }
            s.sort_unstable();
            s.dedup();
        }
        Ok(Self::build(g, sets, mode, heavy_threshold))
    }

    fn build(g: &'g Graph, members: Vec<Vec<Vertex>>, mode: InitMode, heavy_threshold: f64) -> Self {
        let sets = members.len();
        let mut memberships = vec![Vec::new(); g.n()];
        for (l, set) in members.iter().enumerate() {
            for &v in set {
                memberships[v as usize].push(l as u32);
            }
        }
        let heavy = g.vertices().map(|v| g.degree(v) as f64 > heavy_threshold).collect();
        let mut st = WitnessState {
            g,
            sets,
            members,
            memberships,
            table: vec![0; g.m() * sets],
            tri: TriangleState::new(Vec::new()),
            heavy,
            stamp: vec![0; g.n()],
            generation: 0,
            stats: WitnessStats::default(),
        };
        let delta = match mode {
            InitMode::Direct => st.fill_direct(),
            InitMode::Matrix => st.fill_matrix(),
        };
        st.tri = TriangleState::new(delta);
        st
    }

    #[inline]
    fn row_mut(&mut self, e: EdgeId) -> &mut [u64] {
        let l = self.sets;
        &mut self.table[e as usize * l..(e as usize + 1) * l]
    }

    /// Adds `id(w)` to every entry of `e` whose set contains `w`.
    #[inline]
    fn credit(&mut self, e: EdgeId, w: Vertex) {
        let id = Graph::witness_id(w);
        let l = self.sets;
        let base = e as usize * l;
        for &s in &self.memberships[w as usize] {
            self.table[base + s as usize] += id;
        }
    }

    fn fill_direct(&mut self) -> Vec<u32> {
        let g = self.g;
        let mut delta = vec![0u32; g.m()];
        let mut mark = vec![false; g.n()];
        for e in 0..g.m() as EdgeId {
            let (u, v) = g.scan_order(e);
            for &x in g.neighbors(v) {
                mark[x as usize] = true;
            }
            for &w in g.neighbors(u) {
                if mark[w as usize] {
                    delta[e as usize] += 1;
                    self.credit(e, w);
                }
            }
            for &x in g.neighbors(v) {
                mark[x as usize] = false;
            }
        }
        delta
    }

    fn fill_matrix(&mut self) -> Vec<u32> {
        let g = self.g;
        let mut delta = vec![0u32; g.m()];

        // Triangles with a light vertex, each charged to its smallest light
        // vertex w and found from w's pairs of incident edges.
        let is_heavy = std::mem::take(&mut self.heavy);
        for w in g.vertices().filter(|&w| !is_heavy[w as usize]) {
            let nbrs = g.neighbors(w);
            let inc = g.incident_edges(w);
            let owns = |x: Vertex| is_heavy[x as usize] || x > w;
            for i in 0..nbrs.len() {
                let (u, wu) = (nbrs[i], inc[i]);
                if !owns(u) {
                    continue;
                }
                for j in i + 1..nbrs.len() {
                    let (v, wv) = (nbrs[j], inc[j]);
                    if !owns(v) {
                        continue;
                    }
                    let Some(uv) = g.edge_id(u, v) else { continue };
                    for e in [uv, wu, wv] {
                        delta[e as usize] += 1;
                    }
                    self.credit(uv, w);
                    self.credit(wu, v);
                    self.credit(wv, u);
                }
            }
        }
        self.heavy = is_heavy;

        // Heavy-only triangles: for heavy u, v the (u, v) entry of B B'^T sums
        // id(w) over common heavy neighbours w in the column set.
        let heavy: Vec<Vertex> = g.vertices().filter(|&v| self.heavy[v as usize]).collect();
        if heavy.len() < 3 {
            return delta;
        }
        let heavy_edges: Vec<(usize, usize, EdgeId)> = {
            let mut pos = vec![usize::MAX; g.n()];
            for (i, &v) in heavy.iter().enumerate() {
                pos[v as usize] = i;
            }
            g.edges()
                .enumerate()
                .filter(|&(_, (u, v))| self.heavy[u as usize] && self.heavy[v as usize])
                .map(|(e, (u, v))| (pos[u as usize], pos[v as usize], e as EdgeId))
                .collect()
        };
        let adjacency = |cols: &[Vertex], weight: &dyn Fn(Vertex) -> u64| {
            Array2::from_shape_fn((heavy.len(), cols.len()), |(r, c)| {
                if g.has_edge(heavy[r], cols[c]) {
                    weight(cols[c])
                } else {
                    0
                }
            })
        };

        let ones = adjacency(&heavy, &|_| 1);
        let common = ones.dot(&ones.t());
        for &(a, b, e) in &heavy_edges {
            delta[e as usize] += common[[a, b]] as u32;
        }

        for l in 0..self.sets {
            let cols: Vec<Vertex> = self.members[l]
                .iter()
                .copied()
                .filter(|&w| self.heavy[w as usize])
                .collect();
            if cols.is_empty() {
                continue;
            }
            let b = adjacency(&cols, &|_| 1);
            let b_ids = adjacency(&cols, &|w| Graph::witness_id(w));
            let prod = b.dot(&b_ids.t());
            for &(a, c, e) in &heavy_edges {
                self.row_mut(e)[l] += prod[[a, c]];
            }
        }
        delta
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Members of every random set.
    pub fn sets(&self) -> &[Vec<Vertex>] {
        &self.members
    }

    /// Indices of the sets containing `v`.
    pub fn memberships(&self, v: Vertex) -> &[u32] {
        &self.memberships[v as usize]
    }

    /// Table row of `e`, one entry per set.
    pub fn row(&self, e: EdgeId) -> &[u64] {
        &self.table[e as usize * self.sets..(e as usize + 1) * self.sets]
    }

    pub fn delta(&self, e: EdgeId) -> u32 {
        self.tri.delta(e)
    }

    pub fn is_residual(&self, e: EdgeId) -> bool {
        self.tri.is_residual(e)
    }

    pub fn is_heavy(&self, v: Vertex) -> bool {
        self.heavy[v as usize]
    }

    pub fn stats(&self) -> WitnessStats {
        self.stats
    }

    fn check_edge(&self, e: EdgeId) -> Result<(), WitnessError> {
        if e as usize >= self.g.m() {
            return Err(WitnessError::UnknownEdge(e));
        }
        if !self.tri.is_residual(e) {
            return Err(WitnessError::EdgeRemoved(e));
        }
        Ok(())
    }

    #[inline]
    fn residual_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.g.edge_id(a, b).is_some_and(|f| self.tri.is_residual(f))
    }

    /// Lists the residual triangles of `e`, from its table row when the row
    /// accounts for all of them, otherwise by scanning every vertex.
    pub fn enumerate_residual(&mut self, e: EdgeId) -> Result<EnumerationOutcome, WitnessError> {
        self.check_edge(e)?;
        let (u, v) = self.g.endpoints(e);
        let want = self.tri.delta(e) as usize;
        let mut out = EnumerationOutcome::default();
        self.stats.enumerations += 1;
        if want == 0 {
            return Ok(out);
        }

        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        let n = self.g.n() as u64;
        let base = e as usize * self.sets;
        for l in 0..self.sets {
            let s = self.table[base + l];
            if s == 0 || s > n {
                continue;
            }
            let x = (s - 1) as Vertex;
            out.candidates_tested += 1;
            if self.stamp[x as usize] == self.generation {
                continue;
            }
            if self.residual_edge(u, x) && self.residual_edge(v, x) {
                self.stamp[x as usize] = self.generation;
                out.triangles.push(x);
                if out.triangles.len() == want {
                    break;
                }
            }
        }
        self.stats.candidates_tested += out.candidates_tested as u64;

        if out.triangles.len() < want {
            out.used_fallback = true;
            self.stats.fallbacks += 1;
            out.triangles = self
                .g
                .vertices()
                .filter(|&x| self.residual_edge(u, x) && self.residual_edge(v, x))
                .collect();
        }
        debug_assert_eq!(out.triangles.len(), want);
        Ok(out)
    }

    /// Removes `e`, given all of its residual triangles, and updates counts
    /// and table rows of the two other edges of each triangle.
    pub fn remove_edge(&mut self, e: EdgeId, witnessed: &EnumerationOutcome) -> Result<(), WitnessError> {
        self.remove_edge_in_round(e, witnessed, None)
    }

    fn remove_edge_in_round(
        &mut self,
        e: EdgeId,
        witnessed: &EnumerationOutcome,
        mut round: Option<(u32, &mut PeelStats)>,
    ) -> Result<(), WitnessError> {
        self.check_edge(e)?;
        let expected = self.tri.delta(e);
        if witnessed.triangles.len() != expected as usize {
            return Err(WitnessError::IncompleteWitness {
                edge: e,
                expected,
                got: witnessed.triangles.len(),
            });
        }
        let (u, v) = self.g.endpoints(e);
        let (id_u, id_v) = (Graph::witness_id(u), Graph::witness_id(v));
        self.tri.mark_removed(e);
        for &w in &witnessed.triangles {
            let uw = self.g.edge_id(u, w).expect("witnessed vertex is adjacent to u");
            let vw = self.g.edge_id(v, w).expect("witnessed vertex is adjacent to v");
            for s in 0..self.memberships[v as usize].len() {
                let l = self.memberships[v as usize][s] as usize;
                self.row_mut(uw)[l] -= id_v;
            }
            for s in 0..self.memberships[u as usize].len() {
                let l = self.memberships[u as usize][s] as usize;
                self.row_mut(vw)[l] -= id_u;
            }
            match round.as_mut() {
                Some((k, stats)) => {
                    self.tri.decrement(uw, *k, stats);
                    self.tri.decrement(vw, *k, stats);
                }
                None => {
                    self.tri.decrement_quiet(uw);
                    self.tri.decrement_quiet(vw);
                }
            }
        }
        Ok(())
    }
}

/// Exact trussness below `k_trunc`, lower bound `>= k_trunc` elsewhere.
pub fn truncated_decomposition(g: &Graph, cfg: &WitnessConfig) -> Result<TrussLabels, WitnessError> {
    truncated_decomposition_with(g, cfg).map(|(labels, _)| labels)
}

/// [`truncated_decomposition`] plus work counters.
pub fn truncated_decomposition_with(
    g: &Graph,
    cfg: &WitnessConfig,
) -> Result<(TrussLabels, WitnessStats), WitnessError> {
    let resolved = cfg.resolve(g)?;
    let mut state = WitnessState::init(g, &resolved);
    let mut tau: Vec<Option<u32>> = vec![None; g.m()];
    let mut peel = PeelStats::default();

    for k in 1..=resolved.k_trunc {
        if state.tri.residual_count() == 0 {
            break;
        }
        let mut free = |e: EdgeId| tau[e as usize] = Some(0);
        state.tri.scan_round(k, &mut peel, Some(&mut free));
        while let Some(e) = state.tri.pop() {
            let found = state.enumerate_residual(e)?;
            tau[e as usize] = Some(k - 1);
            state.remove_edge_in_round(e, &found, Some((k, &mut peel)))?;
        }
    }
    let mut stats = state.stats;
    stats.stack_pushes = peel.stack_pushes;
    stats.scan_length = peel.scan_length;
    Ok((TrussLabels::truncated(&tau, resolved.k_trunc), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{bowtie, complete, cycle, star};

    fn direct(g: &Graph, sets: Vec<Vec<Vertex>>) -> WitnessState<'_> {
        WitnessState::with_sets(g, sets, InitMode::Direct, 0.0).unwrap()
    }

    #[test]
    fn defaults() {
        let g = complete(10);
        let r = WitnessConfig::new(3).resolve(&g).unwrap();
        assert_eq!(r.sets, (30.0 * 10f64.ln()).ceil() as usize);
        assert!((r.prob - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.b - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        let g = complete(5);
        assert!(WitnessConfig::new(5).resolve(&g).is_ok());
        assert_eq!(WitnessConfig::new(0).resolve(&g), Err(WitnessError::ZeroK));
        let mut c = WitnessConfig::new(2);
        c.prob = Some(0.0);
        assert!(matches!(c.resolve(&g), Err(WitnessError::BadProbability(_))));
        let mut c = WitnessConfig::new(2);
        c.sets = Some(0);
        assert_eq!(c.resolve(&g), Err(WitnessError::NoSets));
        let mut c = WitnessConfig::new(2);
        c.b = Some(0.1);
        assert!(matches!(c.resolve(&g), Err(WitnessError::BadExponent { .. })));
        let mut c = WitnessConfig::new(2);
        c.mem_cap = 64;
        assert!(matches!(c.resolve(&g), Err(WitnessError::MemoryCap { .. })));
    }

    #[test]
    fn triangle_free_tables_are_zero() {
        for g in [star(6), cycle(7)] {
            for mode in [InitMode::Direct, InitMode::Matrix] {
                let cfg = WitnessConfig::new(1).with_init(mode).resolve(&g).unwrap();
                let st = WitnessState::init(&g, &cfg);
                for e in 0..g.m() as EdgeId {
                    assert_eq!(st.delta(e), 0);
                    assert!(st.row(e).iter().all(|&s| s == 0));
                }
            }
        }
    }

    #[test]
    fn single_witness_reveals_id() {
        let g = complete(4);
        let e = g.edge_id(0, 1).unwrap();
        let st = direct(&g, vec![vec![2]]);
        assert_eq!(st.row(e), &[3]);
        assert_eq!(st.delta(e), 2);
    }

    #[test]
    fn enumeration_on_k5() {
        let g = complete(5);
        let cfg = WitnessConfig::new(3).with_seed(11).resolve(&g).unwrap();
        let mut st = WitnessState::init(&g, &cfg);
        for e in 0..g.m() as EdgeId {
            let out = st.enumerate_residual(e).unwrap();
            let (u, v) = g.endpoints(e);
            let mut got = out.triangles.clone();
            got.sort();
            let expect: Vec<Vertex> = (0..5).filter(|&x| x != u && x != v).collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn empty_enumeration_needs_no_fallback() {
        let g = star(3);
        let mut st = direct(&g, vec![vec![0, 1]]);
        let out = st.enumerate_residual(0).unwrap();
        assert!(out.triangles.is_empty() && !out.used_fallback);
    }

    #[test]
    fn colliding_sum_is_rejected() {
        // Edge (0,1) with common neighbours 2 and 3 (ids 3 and 4). Their id
        // sum 7 is vertex 6, which is adjacent to 0 only.
        let g = Graph::from_edges(
            7,
            [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 6), (4, 5)],
        )
        .unwrap();
        let e = g.edge_id(0, 1).unwrap();
        let mut st = direct(&g, vec![vec![2, 3]]);
        assert_eq!(st.row(e), &[7]);
        let out = st.enumerate_residual(e).unwrap();
        assert_eq!(out.candidates_tested, 1);
        assert!(out.used_fallback);
        assert_eq!(out.triangles, vec![2, 3]);
    }

    #[test]
    fn removal_updates_neighbours() {
        let g = complete(3);
        let mut st = direct(&g, vec![vec![0, 1, 2]]);
        let found = st.enumerate_residual(0).unwrap();
        st.remove_edge(0, &found).unwrap();
        for e in 1..3 {
            assert_eq!(st.delta(e), 0);
            assert_eq!(st.row(e), &[0]);
        }
        assert_eq!(st.remove_edge(0, &found), Err(WitnessError::EdgeRemoved(0)));
        assert_eq!(st.enumerate_residual(0), Err(WitnessError::EdgeRemoved(0)));

        let k4 = complete(4);
        let mut st = direct(&k4, vec![vec![0, 1, 2, 3]]);
        let e = k4.edge_id(0, 1).unwrap();
        let found = st.enumerate_residual(e).unwrap();
        st.remove_edge(e, &found).unwrap();
        for f in 0..k4.m() as EdgeId {
            if f == e {
                continue;
            }
            let expect = if k4.endpoints(f) == (2, 3) { 2 } else { 1 };
            assert_eq!(st.delta(f), expect, "edge {:?}", k4.endpoints(f));
        }
    }

    #[test]
    fn incomplete_witness_is_rejected() {
        let g = complete(4);
        let mut st = direct(&g, vec![vec![0]]);
        let partial = EnumerationOutcome {
            triangles: vec![2],
            ..Default::default()
        };
        assert!(matches!(
            st.remove_edge(g.edge_id(0, 1).unwrap(), &partial),
            Err(WitnessError::IncompleteWitness { expected: 2, got: 1, .. })
        ));
    }

    #[test]
    fn truncated_examples() {
        let k5 = complete(5);
        let l = truncated_decomposition(&k5, &WitnessConfig::new(2)).unwrap();
        assert!(!l.all_exact());
        assert_eq!(l.values(), &[2; 10]);
        assert_eq!(l.truncated_at(), Some(2));

        // Above ceil(sqrt(2m)) = 5 every label is exact.
        let l = truncated_decomposition(&k5, &WitnessConfig::new(9)).unwrap();
        assert!(l.all_exact());
        assert_eq!(l.values(), &[3; 10]);

        let b = bowtie();
        let l = truncated_decomposition(&b, &WitnessConfig::new(3)).unwrap();
        assert!(l.all_exact());
        assert_eq!(l.values(), &[1; 6]);
    }

    #[test]
    fn matrix_mode_with_all_heavy_matches_direct() {
        let g = complete(6);
        let sets = vec![vec![0, 2, 4], vec![1], vec![3, 5], vec![]];
        let d = direct(&g, sets.clone());
        let m = WitnessState::with_sets(&g, sets, InitMode::Matrix, 0.0).unwrap();
        assert!(g.vertices().all(|v| m.is_heavy(v)));
        for e in 0..g.m() as EdgeId {
            assert_eq!(d.row(e), m.row(e));
            assert_eq!(d.delta(e), m.delta(e));
        }
    }
}
