//! Seeding conventions.
//!
//! Every random stream is a ChaCha8 generator seeded from a 64-bit value.
//! Child seeds are derived with the SplitMix64 finalizer applied to
//! `parent ^ mix(stream + 1)`, so a stream depends only on its parent seed and
//! its index, never on the order in which streams are created. That keeps
//! results identical under any thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream tags used by the library and the harness.
pub mod stream {
    pub const DATA: u64 = 1;
    pub const CHANNEL: u64 = 2;
    pub const OPTIMIZER: u64 = 3;
    pub const CODEBOOK: u64 = 4;
    pub const TRIAL: u64 = 5;
    pub const EXPANSION: u64 = 6;
}

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(parent: u64, stream: u64) -> u64 {
    splitmix64(parent ^ splitmix64(stream.wrapping_add(1)))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
