//! Fixture builders shared by the benchmarks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use adasim_core::graph::Graph;

/// Connected random graph: path backbone plus `extra` chords.
pub fn random_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(String, String)> = (0..n - 1)
        .map(|i| (i.to_string(), (i + 1).to_string()))
        .collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            pairs.push((a.to_string(), b.to_string()));
        }
    }
    Graph::from_labeled_edges(pairs).unwrap()
}

/// Scored pairs with ties, for the AUC benchmark.
pub fn scored_set(n: usize, seed: u64) -> Vec<(f64, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| ((rng.gen_range(0..256) as f64) / 64.0, rng.gen()))
        .collect()
}
