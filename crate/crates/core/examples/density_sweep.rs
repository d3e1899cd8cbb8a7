//! Density sweep: how the smallest |Π|/q grows with K = |E||F|/q^d.

use ffdot::harness::sweep::write_sweep_csv;
use ffdot::harness::{run_sweep, FamilySpec, SweepConfig};

fn main() -> ffdot::Result<()> {
    let config = SweepConfig {
        qs: vec![7, 11, 13],
        ds: vec![2],
        e_family: FamilySpec::sphere(1),
        f_family: FamilySpec::named("full-space"),
        ks: vec![0.5, 1.0, 2.0, 4.0],
        trials: 10,
        seed: 3,
        pinned: true,
    };
    let rows = run_sweep(&config)?;
    write_sweep_csv(&rows, std::io::stdout().lock())
}
