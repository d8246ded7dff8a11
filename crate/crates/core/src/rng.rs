//! The one place the random generator is chosen.
//!
//! Every simulation draws from a ChaCha8 stream keyed by `(seed, stream)`.
//! Streams with the same seed and different ids are independent, so work can
//! be split into fixed-size chunks and run in any order or on any number of
//! threads without changing the result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Identifier written into report and simulation metadata.
pub const GENERATOR: &str = "chacha8 (rand_chacha 0.9, seed_from_u64 + set_stream)";

/// Trials per stream when a run is split for parallel execution.
pub const TRIALS_PER_STREAM: u64 = 1 << 16;

pub fn stream(seed: u64, stream_id: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Splits `trials` into `(stream_id, trials_in_stream)` chunks.
pub fn chunks(trials: u64) -> impl Iterator<Item = (u64, u64)> {
    let full = trials / TRIALS_PER_STREAM;
    let rest = trials % TRIALS_PER_STREAM;
    (0..full)
        .map(|id| (id, TRIALS_PER_STREAM))
        .chain((rest > 0).then_some((full, rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<u64> = stream(9, 3).random_iter().take(8).collect();
        let b: Vec<u64> = stream(9, 3).random_iter().take(8).collect();
        let c: Vec<u64> = stream(9, 4).random_iter().take(8).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn chunking_covers_all_trials() {
        for trials in [1, 100, TRIALS_PER_STREAM, TRIALS_PER_STREAM + 1, 1_000_000] {
            let total: u64 = chunks(trials).map(|(_, t)| t).sum();
            assert_eq!(total, trials);
        }
        assert_eq!(chunks(0).count(), 0);
    }
}
