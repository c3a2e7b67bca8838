//! Reproducible random streams.
//!
//! One master seed fans out into independent substreams through the ChaCha
//! stream parameter: substream `k` of seed `s` is `ChaCha8Rng::seed_from_u64(s)`
//! positioned on stream `k`. Tasks that may run concurrently (game trial
//! chunks, tomography repeats) each own a substream, so results do not
//! depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in this crate.
pub type TaskRng = ChaCha8Rng;

/// Substream `stream` of the master seed.
pub fn task_rng(seed: u64, stream: u64) -> TaskRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
