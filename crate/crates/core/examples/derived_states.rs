//! The running state seen by each passenger, for one simulated boarding.
//!
//! cargo run --example derived_states -- [n] [k] [seed]

use absent_minded::process::{derive_x, derive_z, simulate_boarding};
use absent_minded::rng::stream;
use absent_minded::BoardingConfig;

fn main() -> Result<(), absent_minded::Error> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let k = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let config = BoardingConfig::new(n, k)?;

    let placement = simulate_boarding(&config, &mut stream(seed, 0));
    println!("seats: {:?}", placement.seats());
    println!("misplaced: {}", placement.wrong_count());

    if k == 1 {
        println!("X: {:?}", derive_x(&placement, &config)?.values());
    }
    for (i, z) in derive_z(&placement, k)?.iter() {
        println!("Z_{i:<3} {z:?}");
    }
    Ok(())
}
