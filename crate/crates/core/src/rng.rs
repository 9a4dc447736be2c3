//! The seeded generator behind every randomized routine.
//!
//! ChaCha8 keyed by a 64-bit seed: the stream is fixed by the algorithm, so
//! a recorded seed replays identically on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
