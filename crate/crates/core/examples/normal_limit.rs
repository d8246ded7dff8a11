//! Kolmogorov distance between the standardized misplaced-passenger count
//! and the standard normal along a ladder of plane sizes.
//!
//! cargo run --release --example normal_limit -- [seed] [trials]

use absent_minded::verify::{clt_ladder, CLT_LADDER};

fn main() -> Result<(), absent_minded::Error> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20240601);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    for k in [1, 2, 3] {
        let report = clt_ladder(k, &CLT_LADDER, trials, seed)?;
        println!("k = {k}: {}", report.summary());
        for c in &report.comparisons {
            println!("    {:<36} {:?} -> {:?}", c.label, c.expected, c.observed);
        }
    }
    Ok(())
}
