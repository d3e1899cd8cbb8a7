use std::process::ExitCode;

fn main() -> ExitCode {
    ffdot::harness::cli::run_from(std::env::args_os())
}
