//! Seeded simulation: histogram, chi-square fit against the exact law, and
//! throughput on a large plane.
//!
//! cargo run --release --example simulate -- [seed]

use std::time::Instant;

use absent_minded::exact::mean_w_f64;
use absent_minded::rng::GENERATOR;
use absent_minded::simulate::wrong_count_histogram;
use absent_minded::stats::sample_moments;
use absent_minded::verify::monte_carlo_fit;
use absent_minded::{BoardingConfig, DEFAULT_BUDGET};

fn main() -> Result<(), absent_minded::Error> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    println!("generator: {GENERATOR}");

    for (n, k) in [(4, 1), (8, 2), (7, 3)] {
        let report = monte_carlo_fit(&BoardingConfig::new(n, k)?, 200_000, seed, DEFAULT_BUDGET)?;
        println!("{}", report.summary());
    }

    let big = BoardingConfig::new(1_000_000, 1)?;
    let start = Instant::now();
    let h = wrong_count_histogram(&big, 100, seed);
    let elapsed = start.elapsed();
    let (mean, _) = sample_moments(&h);
    println!(
        "n = 10^6: 100 trials in {elapsed:.2?}, sample mean {mean:.2}, exact mean {:.2}",
        mean_w_f64(&big)
    );
    Ok(())
}
