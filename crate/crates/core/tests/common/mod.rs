#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use truss_core::graph::families::gnp;
use truss_core::Graph;

pub const SIZES: [usize; 3] = [20, 40, 60];
pub const DENSITIES: [f64; 3] = [0.1, 0.3, 0.6];
pub const SEEDS_PER_SETTING: u64 = 100;

pub struct CorpusGraph {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub graph: Graph,
}

/// `G(n, p)` for every size, density and seed of the shared test corpus.
pub fn corpus() -> Vec<CorpusGraph> {
    let mut out = Vec::new();
    for (si, &n) in SIZES.iter().enumerate() {
        for (pi, &p) in DENSITIES.iter().enumerate() {
            for seed in 0..SEEDS_PER_SETTING {
                let mut rng = ChaCha8Rng::seed_from_u64(((si as u64) << 40) | ((pi as u64) << 32) | seed);
                out.push(CorpusGraph {
                    n,
                    p,
                    seed,
                    graph: gnp(n, p, &mut rng),
                });
            }
        }
    }
    out
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}
