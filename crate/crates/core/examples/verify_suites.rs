//! Runs the built-in verification suites on a small grid.
//!
//! ```text
//! cargo run --release --example verify_suites -- 7 50
//! ```

use ffdot::harness::verify::parse_suites;
use ffdot::harness::{run_suites, VerifyConfig};

fn main() -> ffdot::Result<()> {
    let mut args = std::env::args().skip(1);
    let qmax = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let config = VerifyConfig {
        qmax,
        dmax: 3,
        trials,
        seed: 1,
        plant_origin: false,
    };
    let mut failed = false;
    for outcome in run_suites(&parse_suites("all")?, &config) {
        println!("{outcome}");
        for f in &outcome.failures {
            println!("  {f}");
        }
        failed |= !outcome.passed();
    }
    if failed {
        std::process::exit(1);
    }
    Ok(())
}
