//! Every feasible seating for a small plane with its exact probability.
//!
//! cargo run --example table_one -- [n] [k]

use absent_minded::distribution::fraction_string;
use absent_minded::process::{count_feasible, enumerate_feasible};
use absent_minded::{BoardingConfig, DEFAULT_BUDGET};

fn main() -> Result<(), absent_minded::Error> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let k = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let config = BoardingConfig::new(n, k)?;

    let rows = enumerate_feasible(&config, DEFAULT_BUDGET)?;
    println!("{} feasible placements (expected {})", rows.len(), count_feasible(&config));
    for row in &rows {
        let seats: Vec<String> = row.placement.seats().iter().map(|s| s.to_string()).collect();
        println!(
            "{}  {:>10}  W = {}",
            seats.join(" "),
            fraction_string(&row.probability),
            row.placement.wrong_count()
        );
    }
    Ok(())
}
