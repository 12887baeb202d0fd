//! Seed derivation for reproducible Monte Carlo runs.
//!
//! Every trial gets its own generator seeded from `(master, index)`, so serial
//! and parallel loops observe the same random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the seed of trial `index` from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix(mix(master ^ 0x9e37_79b9_7f4a_7c15).wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Generator for trial `index` under `master`.
pub fn trial_rng(master: u64, index: u64) -> Rng {
    rng_from_seed(derive_seed(master, index))
}
