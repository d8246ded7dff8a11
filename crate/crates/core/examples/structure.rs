//! Exact structural checks: the correctly seated indicators multiply, the
//! running state is uniform, and the law of W has two independent routes.
//!
//! cargo run --example structure -- [max_n] [max_k]

use absent_minded::verify::{check_r_routes, ExactModel};
use absent_minded::{BoardingConfig, DEFAULT_BUDGET};

fn main() -> Result<(), absent_minded::Error> {
    let mut args = std::env::args().skip(1);
    let max_n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let max_k: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let mut failed = 0;
    for n in 2..=max_n {
        for k in 1..n.min(max_k + 1) {
            let model = ExactModel::new(BoardingConfig::new(n, k)?, DEFAULT_BUDGET)?;
            for report in model.exact_suite()? {
                if !report.passed() {
                    failed += 1;
                }
                println!("{}", report.summary());
            }
        }
    }
    let routes = check_r_routes(60);
    println!("{}", routes.summary());
    if !routes.passed() {
        failed += 1;
    }
    println!("{failed} failed");
    Ok(())
}
