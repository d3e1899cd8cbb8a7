//! `ffdot construct|analyze|verify|sweep|probe`.
//!
//! Exit codes: 0 success, 1 verification or report-invariant failure,
//! 2 usage or configuration error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::probe::{run_probe, write_probe_csv, ProbeConfig};
use super::report::analyze;
use super::sweep::{run_sweep, write_sweep_csv, SweepConfig};
use super::trials::{parse_line_list, FamilySpec};
use super::verify::{parse_suites, run_suites, VerifyConfig};
use crate::error::{Error, Result};
use crate::geometry::parse_int_list;
use crate::pointset::{read_set, sample, write_set_to, SampleSpec};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ffdot", version, about = "Dot-product sets over F_q^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or sample a point set and write it in the pointset text format.
    Construct(ConstructArgs),
    /// Compute every statistic for a pair of point-set files.
    Analyze(AnalyzeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Density sweep over (q, d, K) cells, one CSV row per cell.
    Sweep(SweepArgs),
    /// Probe a variety that avoids the origin.
    Probe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// sphere, paraboloid, paraboloid-base, variety, variety-translate,
    /// line-union, uniform-random, punctured, full-space
    #[arg(long)]
    pub family: Option<String>,
    /// `a1,..,ad;b1,..,bd;c`
    #[arg(long, allow_hyphen_values = true)]
    pub variety: Option<String>,
    /// `j=<int>` for spheres
    #[arg(long)]
    pub param: Option<String>,
    /// Shift vector for variety-translate, e.g. `0,0,1`
    #[arg(long, allow_hyphen_values = true)]
    pub translate: Option<String>,
    /// Line representatives for line-union, e.g. `1,0;1,1`
    #[arg(long)]
    pub lines: Option<String>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let name = match (&self.family, &self.variety) {
            (Some(f), _) => f.clone(),
            (None, Some(_)) if self.translate.is_some() => "variety-translate".into(),
            (None, Some(_)) => "variety".into(),
            (None, None) => return Err(Error::Parse("--family or --variety is required".into())),
        };
        let mut spec = FamilySpec::named(&name);
        if let Some(p) = &self.param {
            spec = spec.with_param(p)?;
        }
        spec.variety = self.variety.clone();
        spec.translate = self.translate.as_deref().map(parse_int_list).transpose()?;
        if let Some(l) = &self.lines {
            spec.lines = parse_line_list(l)?;
        }
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Sample this many points; default is the whole family.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub e: PathBuf,
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Recorded in the report.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 13)]
    pub qmax: u32,
    #[arg(long, default_value_t = 3)]
    pub dmax: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Failure and skip log.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub d: Vec<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Family for F (default full-space).
    #[arg(long, default_value = "full-space")]
    pub f_family: String,
    /// `j=<int>` for an F sphere.
    #[arg(long)]
    pub f_param: Option<String>,
    /// Densities K with |E||F| = K q^d.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Record the pinned fraction #{x ∈ E : |Π(x,E)| > q/2} / |E|.
    #[arg(long)]
    pub pinned: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub variety: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Invariant(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            })
        }
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Probe(a) => probe(a),
    }
}

fn construct(a: ConstructArgs) -> Result<ExitCode> {
    let spec = a.family.spec()?;
    let d = match (a.d, &spec.variety) {
        (Some(d), _) => d,
        (None, Some(v)) => crate::geometry::Variety::parse(v, a.q)?.dim(),
        (None, None) => return Err(Error::Parse("--d is required".into())),
    };
    let family = spec.resolve(a.q, d)?;
    let set = sample(&SampleSpec {
        q: a.q,
        d,
        family,
        size: a.size,
        seed: a.seed,
    })?;
    write_set_to(&set, output(&a.out)?)?;
    eprintln!(
        "constructed {} points of {} in F_{}^{} (seed={})",
        set.len(),
        spec.label(),
        a.q,
        d,
        a.seed
    );
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<ExitCode> {
    let e = read_set(&a.e)?;
    let f = read_set(&a.f)?;
    let report = analyze(
        &e,
        &f,
        a.seed,
        &a.e.display().to_string(),
        &a.f.display().to_string(),
    )?;
    let mut out = output(&a.out)?;
    match a.format {
        Format::Json => {
            report.write_json(&mut out)?;
            writeln!(out)?;
        }
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let suites = parse_suites(&a.suite)?;
    if a.trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let config = VerifyConfig {
        qmax: a.qmax,
        dmax: a.dmax,
        trials: a.trials,
        seed: a.seed,
        plant_origin: false,
    };
    let outcomes = run_suites(&suites, &config);
    let mut log = output(&a.out)?;
    writeln!(
        log,
        "# verify suite={} qmax={} dmax={} trials={} seed={}",
        a.suite, a.qmax, a.dmax, a.trials, a.seed
    )?;
    let mut ok = true;
    for o in &outcomes {
        writeln!(log, "{o}")?;
        for f in &o.failures {
            writeln!(log, "  {f}")?;
        }
        for n in &o.notes {
            writeln!(log, "  {n}")?;
        }
        ok &= o.passed();
    }
    log.flush()?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    })
}

fn sweep(a: SweepArgs) -> Result<ExitCode> {
    let mut f_family = FamilySpec::named(&a.f_family);
    if let Some(p) = &a.f_param {
        f_family = f_family.with_param(p)?;
    }
    let config = SweepConfig {
        qs: a.q,
        ds: a.d,
        e_family: a.family.spec()?,
        f_family,
        ks: a.k,
        trials: a.trials,
        seed: a.seed,
        pinned: a.pinned,
    };
    let rows = run_sweep(&config)?;
    write_sweep_csv(&rows, output(&a.out)?)?;
    Ok(ExitCode::SUCCESS)
}

fn probe(a: ProbeArgs) -> Result<ExitCode> {
    let config = ProbeConfig {
        variety: a.variety,
        qs: a.q,
        ks: a.k,
        trials: a.trials,
        seed: a.seed,
    };
    let rows = run_probe(&config)?;
    write_probe_csv(&rows, output(&a.out)?)?;
    Ok(ExitCode::SUCCESS)
}
