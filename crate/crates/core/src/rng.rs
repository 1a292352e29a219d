//! Seeded random streams.
//!
//! Every stochastic routine takes an explicit `u64` seed. ChaCha8 is a
//! counter-based generator with 2^64 independent streams, so parallel work
//! items derive disjoint streams from `(seed, stream)` and results do not
//! depend on how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Packs a stage index and a work-item index into one stream id.
pub fn stage_stream(stage: u32, item: u32) -> u64 {
    (u64::from(stage) << 32) | u64::from(item)
}
