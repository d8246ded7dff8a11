//! Many-trial simulation runs split over independent RNG streams.

use rayon::prelude::*;

use crate::config::BoardingConfig;
use crate::process::{sample_wrong_count_jump, Simulator};
use crate::rng::{self, SimRng};
use crate::stats::{merge_into, Histogram};

/// Runs `trials` draws of a count-valued sampler and tallies them.
///
/// Trials are split into fixed-size chunks, chunk `i` drawing from stream
/// `i` of `seed`. `make` builds one sampler per chunk, so samplers may keep
/// scratch buffers. The result does not depend on the thread count.
pub fn histogram<F, S>(trials: u64, seed: u64, make: F) -> Histogram
where
    F: Fn() -> S + Sync,
    S: FnMut(&mut SimRng) -> usize,
{
    let chunks: Vec<(u64, u64)> = rng::chunks(trials).collect();
    chunks
        .into_par_iter()
        .map(|(stream_id, count)| {
            let mut r = rng::stream(seed, stream_id);
            let mut sample = make();
            let mut h = Histogram::new();
            for _ in 0..count {
                *h.entry(sample(&mut r)).or_insert(0) += 1;
            }
            h
        })
        .reduce(Histogram::new, |mut a, b| {
            merge_into(&mut a, b);
            a
        })
}

/// Histogram of misplaced-ball counts from the full O(n) simulator.
pub fn wrong_count_histogram(config: &BoardingConfig, trials: u64, seed: u64) -> Histogram {
    histogram(trials, seed, || {
        let mut sim = Simulator::new(*config);
        move |r: &mut SimRng| sim.sample_wrong_count(r)
    })
}

/// Same law, drawn with the event-jumping sampler.
pub fn wrong_count_histogram_jump(config: &BoardingConfig, trials: u64, seed: u64) -> Histogram {
    histogram(trials, seed, || {
        let config = *config;
        move |r: &mut SimRng| sample_wrong_count_jump(&config, r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let c = BoardingConfig::new(12, 2).unwrap();
        let trials = rng::TRIALS_PER_STREAM * 2 + 17;
        assert_eq!(
            wrong_count_histogram(&c, trials, 4),
            wrong_count_histogram(&c, trials, 4)
        );
        assert_ne!(
            wrong_count_histogram(&c, 1000, 4),
            wrong_count_histogram(&c, 1000, 5)
        );
        assert_eq!(crate::stats::total(&wrong_count_histogram_jump(&c, 999, 1)), 999);
    }
}
