//! Seed derivation for reproducible multi-realization experiments.
//!
//! Every (p, realization) cell of a sweep gets its own generator, seeded by
//! mixing the base seed, the bit pattern of `p` and the realization index
//! through SplitMix64. Cells depend only on their own coordinates, so
//! execution order, parallelism, or adding new p values never changes the
//! stream of an existing cell.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every randomized operation in the crate.
pub type Rng = ChaCha8Rng;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of realization `realization` at spammer ratio `p`.
pub fn realization_seed(base: u64, p: f64, realization: u64) -> u64 {
    let h = splitmix64(base);
    let h = splitmix64(h ^ p.to_bits());
    splitmix64(h ^ realization)
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
