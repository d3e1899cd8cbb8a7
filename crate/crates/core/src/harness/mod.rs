//! Experiment orchestration on top of the library: per-pair reports,
//! verification suites, density sweeps, variety probes and the CLI.

pub mod cli;
pub mod probe;
pub mod report;
pub mod sweep;
pub mod trials;
pub mod verify;

pub use probe::{run_probe, ProbeConfig, ProbeRow};
pub use report::{analyze, AnalysisReport};
pub use sweep::{run_sweep, CellStats, SweepConfig, SweepRow};
pub use trials::FamilySpec;
pub use verify::{run_suite, run_suites, Suite, SuiteOutcome, VerifyConfig};
