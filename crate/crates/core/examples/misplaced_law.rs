//! Exact law of the number of misplaced passengers, printed and drawn as SVG.
//!
//! cargo run --example misplaced_law -- [n] [k] [out.svg]

use absent_minded::distribution::{fraction_string, to_f64};
use absent_minded::exact::dist_w;
use absent_minded::svg::pmf_bar_chart;
use absent_minded::{BoardingConfig, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let k = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let out = args.next().unwrap_or_else(|| "misplaced.svg".into());
    let config = BoardingConfig::new(n, k)?;

    let law = dist_w(&config, DEFAULT_BUDGET)?;
    for (w, p) in law.iter().take(15) {
        println!("P(W = {w:>3}) = {:.6}", to_f64(p));
    }
    if let Some((w, p)) = law.mode() {
        println!("mode {w} with probability {}", to_f64(p));
    }
    println!("mean {}", fraction_string(&law.mean()));

    std::fs::write(&out, pmf_bar_chart(&law, &format!("n = {n}, k = {k}")))?;
    println!("wrote {out}");
    Ok(())
}
