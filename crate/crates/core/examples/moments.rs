//! Mean and variance of the misplaced count: exact fractions for a small
//! plane, then floating point against the logarithmic approximation.
//!
//! cargo run --example moments

use absent_minded::distribution::fraction_string;
use absent_minded::exact::{asymptotic_params, mean_c, mean_w, mean_w_f64, var_w, var_w_f64};
use absent_minded::BoardingConfig;

fn main() -> Result<(), absent_minded::Error> {
    for k in 1..=3 {
        let config = BoardingConfig::new(10, k)?;
        println!(
            "n = 10, k = {k}: E W = {}, Var W = {}",
            fraction_string(&mean_w(&config)),
            fraction_string(&var_w(&config))
        );
    }
    println!("n = 10, k = 1: E C = {}", fraction_string(&mean_c(10)));
    println!();

    println!("{:>8} {:>3} {:>12} {:>12} {:>12} {:>12}", "n", "k", "E W", "Var W", "k ln n", "sd approx");
    for n in [10, 100, 1_000, 10_000, 100_000, 1_000_000] {
        for k in [1, 2, 3] {
            let config = BoardingConfig::new(n, k)?;
            let (mu, sd) = asymptotic_params(&config);
            println!(
                "{n:>8} {k:>3} {:>12.4} {:>12.4} {mu:>12.4} {sd:>12.4}",
                mean_w_f64(&config),
                var_w_f64(&config),
            );
        }
    }
    Ok(())
}
