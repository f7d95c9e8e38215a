//! Deterministic RNG streams derived from a master seed.
//!
//! ChaCha8 is seeded from `(master, domain, a, b)` so independent pipeline
//! stages and parallel walk workers get reproducible, non-overlapping streams
//! regardless of scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod domain {
    pub const SPLIT: u64 = 1;
    pub const NEGATIVE: u64 = 2;
    pub const FOLD: u64 = 3;
    pub const SPARSIFY: u64 = 4;
    pub const WALK_ORDER: u64 = 5;
    pub const WALK_STEP: u64 = 6;
    pub const EMBED_INIT: u64 = 7;
}

pub fn stream_rng(master: u64, domain: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master.to_le_bytes());
    seed[8..16].copy_from_slice(&domain.to_le_bytes());
    seed[16..24].copy_from_slice(&a.to_le_bytes());
    seed[24..32].copy_from_slice(&b.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}
