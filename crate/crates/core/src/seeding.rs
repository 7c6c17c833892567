//! Deterministic RNG derivation.
//!
//! Every stochastic operation takes an explicit seed; large jobs (grid
//! sweeps, per-syllogism distributions) derive independent sub-streams from
//! one root seed so that work items can run in any order, or in parallel,
//! and still reproduce bit-identically.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; a cheap, well-mixed u64 -> u64 permutation.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a root seed with a path of indices (grid point, syllogism, run,
/// ...) into a single stream seed.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    let mut state = splitmix64(root);
    for &p in path {
        state = splitmix64(state ^ splitmix64(p.wrapping_add(0x51_7c_c1_b7_27_22_0a_95)));
    }
    state
}

/// A seeded RNG for the sub-stream identified by `path` under `root`.
pub fn rng_for(root: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(root, path))
}
