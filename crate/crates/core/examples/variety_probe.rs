//! Probes a quadric that misses the origin.
//!
//! ```text
//! cargo run --example variety_probe -- "1,1,0;0,0,-1;1"
//! ```

use ffdot::harness::probe::write_probe_csv;
use ffdot::harness::{run_probe, ProbeConfig};
use ffdot::Error;

fn main() -> ffdot::Result<()> {
    let variety = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,1,0;0,0,-1;1".into());
    let config = ProbeConfig {
        variety,
        qs: vec![5, 7, 11],
        ks: vec![1.0, 2.0, 4.0],
        trials: 10,
        seed: 1,
    };
    match run_probe(&config) {
        Ok(rows) => write_probe_csv(&rows, std::io::stdout().lock()),
        Err(Error::OriginInVariety) => {
            eprintln!(
                "{} passes through the origin; nothing to probe",
                config.variety
            );
            Ok(())
        }
        Err(e) => Err(e),
    }
}
