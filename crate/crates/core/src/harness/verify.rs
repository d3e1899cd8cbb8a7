//! Verification suites. Line-count suites are exhaustive over their grid;
//! bound suites run seeded trials and log a reproduction seed per failure.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{closed_form_floors, FLOAT_TOL, SECOND_MOMENT_REL_TOL};
use super::trials::{cell_tag, random_subset, trial_seed};
use crate::error::{Error, Result};
use crate::field::{odd_primes_up_to, Field};
use crate::geometry::{Variety, Vector};
use crate::pointset::{derive_seed, PointSet, MAX_AMBIENT};
use crate::products::{self, bounds_from_parts, second_moment_bound};
use crate::spectral::{self, dft, energy_from_parts, line_table, naive_dft, plancherel_defect};

/// Largest `q^d` a verification cell is run at.
pub const VERIFY_AMBIENT_CAP: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Plancherel,
    SecondMoment,
    SphereLines,
    ParaboloidLines,
    TranslateLines,
    Bounds,
    E0,
    SphereDistance,
    Projection,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Plancherel,
        Suite::SecondMoment,
        Suite::SphereLines,
        Suite::ParaboloidLines,
        Suite::TranslateLines,
        Suite::Bounds,
        Suite::E0,
        Suite::SphereDistance,
        Suite::Projection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Plancherel => "plancherel",
            Suite::SecondMoment => "second-moment",
            Suite::SphereLines => "sphere-lines",
            Suite::ParaboloidLines => "paraboloid-lines",
            Suite::TranslateLines => "translate-lines",
            Suite::Bounds => "bounds",
            Suite::E0 => "e0",
            Suite::SphereDistance => "sphere-distance",
            Suite::Projection => "projection",
        }
    }

    fn tag(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(vec![name.parse()?])
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub qmax: u32,
    pub dmax: usize,
    pub trials: usize,
    pub seed: u64,
    /// Forces the origin into `E` in second-moment trials (those trials are
    /// then out of hypothesis and skipped).
    pub plant_origin: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            qmax: 13,
            dmax: 3,
            trials: 200,
            seed: 1,
            plant_origin: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub q: u32,
    pub d: usize,
    /// Trial index, or `None` for exhaustive checks.
    pub trial: Option<usize>,
    /// Seed that reproduces the failing trial.
    pub seed: Option<u64>,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {} q={} d={}", self.suite, self.q, self.d)?;
        if let Some(t) = self.trial {
            write!(f, " trial={t}")?;
        }
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Option<Suite>,
    pub checks: u64,
    pub skipped: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: TrialResult) {
        self.checks += other.checks;
        self.skipped += other.skipped as u64;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.suite.map(Suite::name).unwrap_or("?");
        write!(
            f,
            "{} {name}: checks={} skipped={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.skipped,
            self.failures.len()
        )
    }
}

/// Result of one trial or one exhaustive cell.
#[derive(Debug, Default)]
struct TrialResult {
    checks: u64,
    skipped: bool,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

struct Ctx {
    suite: Suite,
    q: u32,
    d: usize,
    trial: Option<usize>,
    seed: Option<u64>,
    out: TrialResult,
}

impl Ctx {
    fn new(suite: Suite, q: u32, d: usize, trial: Option<usize>, seed: Option<u64>) -> Self {
        Ctx {
            suite,
            q,
            d,
            trial,
            seed,
            out: TrialResult::default(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.out.checks += 1;
        if !ok {
            self.out.failures.push(Failure {
                suite: self.suite,
                q: self.q,
                d: self.d,
                trial: self.trial,
                seed: self.seed,
                message: msg(),
            });
        }
    }

    fn skip(&mut self, why: impl Into<String>) {
        self.out.skipped = true;
        let mut note = format!("skip {} q={} d={}", self.suite, self.q, self.d);
        if let Some(t) = self.trial {
            note.push_str(&format!(" trial={t}"));
        }
        if let Some(s) = self.seed {
            note.push_str(&format!(" seed={s}"));
        }
        note.push_str(&format!(": {}", why.into()));
        self.out.notes.push(note);
    }

    fn error(&mut self, err: Error) {
        self.check(false, || format!("error: {err}"));
    }
}

/// `(q, d)` cells with `q` an odd prime in the given range and `q^d` under the cap.
fn cells(
    qs: impl IntoIterator<Item = u32>,
    ds: impl IntoIterator<Item = usize> + Clone,
) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for q in qs {
        for d in ds.clone() {
            if (q as u64)
                .checked_pow(d as u32)
                .is_some_and(|n| n <= VERIFY_AMBIENT_CAP.min(MAX_AMBIENT))
            {
                out.push((q, d));
            }
        }
    }
    out
}

pub fn run_suites(suites: &[Suite], config: &VerifyConfig) -> Vec<SuiteOutcome> {
    suites.iter().map(|&s| run_suite(s, config)).collect()
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteOutcome {
    let primes = odd_primes_up_to(config.qmax);
    let grid = cells(primes.iter().copied(), 2..=config.dmax);
    let mut outcome = SuiteOutcome {
        suite: Some(suite),
        ..Default::default()
    };

    let exhaustive = |f: fn(&mut Ctx)| -> Vec<TrialResult> {
        grid.par_iter()
            .map(|&(q, d)| {
                let mut ctx = Ctx::new(suite, q, d, None, None);
                f(&mut ctx);
                ctx.out
            })
            .collect()
    };

    let results: Vec<TrialResult> = match suite {
        Suite::SphereLines => exhaustive(sphere_lines),
        Suite::ParaboloidLines => exhaustive(paraboloid_lines),
        Suite::TranslateLines => {
            let small = cells(
                primes.iter().copied().filter(|&q| q <= 7),
                2..=config.dmax.min(3),
            );
            small
                .par_iter()
                .map(|&(q, d)| {
                    let mut ctx = Ctx::new(suite, q, d, None, None);
                    translate_lines(&mut ctx);
                    ctx.out
                })
                .collect()
        }
        _ => {
            let trial_fn: fn(&mut Ctx, u64, &VerifyConfig) = match suite {
                Suite::Plancherel => plancherel_trial,
                Suite::SecondMoment => second_moment_trial,
                Suite::Bounds => bounds_trial,
                Suite::E0 => e0_trial,
                Suite::SphereDistance => sphere_distance_trial,
                Suite::Projection => projection_trial,
                _ => unreachable!(),
            };
            let jobs: Vec<(u32, usize, usize)> = grid
                .iter()
                .flat_map(|&(q, d)| (0..config.trials).map(move |t| (q, d, t)))
                .collect();
            jobs.par_iter()
                .map(|&(q, d, t)| {
                    let seed = trial_seed(config.seed, cell_tag(suite.tag(), q, d), t as u64);
                    let mut ctx = Ctx::new(suite, q, d, Some(t), Some(seed));
                    trial_fn(&mut ctx, seed, config);
                    ctx.out
                })
                .collect()
        }
    };
    for r in results {
        outcome.merge(r);
    }
    outcome
}

fn full(q: u32, d: usize) -> PointSet {
    PointSet::full_space(q, d).expect("cell within cap")
}

fn plancherel_trial(ctx: &mut Ctx, seed: u64, _: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let e = match random_subset(&full(q, d), seed) {
        Ok(e) => e,
        Err(err) => return ctx.error(err),
    };
    let spectrum = dft(&e);
    let density = e.len() as f64 / e.ambient_len() as f64;
    let defect = plancherel_defect(&spectrum, e.len());
    ctx.check(defect <= 1e-9 * density.max(1.0), || {
        format!("Plancherel defect {defect:e} for |E|={}", e.len())
    });
    let dc = spectrum.values()[0];
    ctx.check(
        (dc.re - density).abs() <= 1e-12 && dc.im.abs() <= 1e-12,
        || format!("Ê(0) = {dc} != |E|/q^d = {density}"),
    );
    if q <= 7 && d <= 3 {
        let naive = naive_dft(&e);
        let worst = spectrum
            .values()
            .iter()
            .zip(naive.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        ctx.check(worst <= 1e-9, || {
            format!("dft vs naive differ by {worst:e}")
        });
    }
}

/// `(E, F)` with `E` drawn from `F_q^d \ {0}` and `F` from `F_q^d`.
fn punctured_pair(q: u32, d: usize, seed: u64) -> Result<(PointSet, PointSet)> {
    let space = full(q, d);
    let e = random_subset(&space.without_origin(), derive_seed(seed, 10))?;
    let f = random_subset(&space, derive_seed(seed, 11))?;
    Ok((e, f))
}

fn second_moment_trial(ctx: &mut Ctx, seed: u64, config: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let (mut e, f) = match punctured_pair(q, d, seed) {
        Ok(p) => p,
        Err(err) => return ctx.error(err),
    };
    if config.plant_origin {
        e = e.with_origin();
    }
    if e.contains_origin() {
        return ctx.skip("0 ∈ E, outside the second-moment hypothesis");
    }
    let nu = products::nu_histogram(&e, &f).expect("same space");
    let energy = spectral::energy_b(&e, &f).expect("same space");
    let rhs = second_moment_bound(e.len(), f.len(), q, d, energy);
    let lhs = nu.second_moment;
    ctx.check(
        lhs as f64 <= rhs + FLOAT_TOL + SECOND_MOMENT_REL_TOL * rhs,
        || format!("Σν² = {lhs} > {rhs} (|E|={}, |F|={})", e.len(), f.len()),
    );
    let cap = super::report::max_count_energy_cap(line_table(&e).max_count(), f.len(), q, d);
    ctx.check(energy <= cap + 1e-9, || format!("𝔅 = {energy} > {cap}"));
}

/// The three hypothesis classes for the bound checks.
fn bounds_trial(ctx: &mut Ctx, seed: u64, _: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let space = full(q, d);
    let run = |ctx: &mut Ctx, class: &str, e: PointSet, f: PointSet| {
        let nu = products::nu_histogram(&e, &f).expect("same space");
        let pi = nu.support_size() as u64;
        let spec_f = dft(&f);
        let energy = energy_from_parts(&line_table(&e), &spec_f);
        let b = bounds_from_parts(e.len(), f.len(), q, d, &nu, energy, e.contains_origin());
        ctx.check(b.cs_bound.le_integer(pi), || {
            format!("[{class}] cs_bound {} > |Π| = {pi}", b.cs_bound)
        });
        if !b.valid_fourier {
            return;
        }
        let fb = b.fourier_bound;
        ctx.check(fb <= b.cs_bound.to_f64() + FLOAT_TOL, || {
            format!("[{class}] fourier_bound {fb} > cs_bound {}", b.cs_bound)
        });
        ctx.check(pi as f64 >= (fb - FLOAT_TOL).ceil(), || {
            format!("[{class}] |Π| = {pi} < ceil({fb})")
        });
        let salem = spectral::salem_level(&spec_f, f.len());
        for (name, floor) in closed_form_floors(&e, &f, salem) {
            ctx.check(fb >= floor - FLOAT_TOL, || {
                format!("[{class}] fourier_bound {fb} < {name} floor {floor}")
            });
        }
    };

    let general = (|| -> Result<_> {
        Ok((
            random_subset(&space, derive_seed(seed, 20))?,
            random_subset(&space, derive_seed(seed, 21))?,
        ))
    })();
    let punctured = punctured_pair(q, d, seed);
    let j = 1 + (derive_seed(seed, 30) % (q as u64 - 1)) as i64;
    let sphere = (|| -> Result<_> {
        Ok((
            random_subset(&PointSet::sphere(q, d, j)?, derive_seed(seed, 31))?,
            random_subset(&space, derive_seed(seed, 32))?,
        ))
    })();
    for (class, pair) in [
        ("general", general),
        ("punctured", punctured),
        ("sphere", sphere),
    ] {
        match pair {
            Ok((e, f)) => run(ctx, class, e, f),
            Err(err) => ctx.error(err),
        }
    }
}

fn e0_trial(ctx: &mut Ctx, seed: u64, _: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let space = full(q, d);
    let (e, f) = match (
        random_subset(&space, derive_seed(seed, 40)),
        random_subset(&space, derive_seed(seed, 41)),
    ) {
        (Ok(e), Ok(f)) => (e, f),
        (Err(err), _) | (_, Err(err)) => return ctx.error(err),
    };
    if e.without_origin().is_empty() {
        return ctx.skip("E ⊂ {0}");
    }
    let e0 = products::extract_e0(&e).expect("E \\ {0} nonempty");
    let table = line_table(&e);
    ctx.check(e0.len() == table.lines_hit(), || {
        format!("|E0| = {} != lines_hit = {}", e0.len(), table.lines_hit())
    });
    let m0 = line_table(&e0).max_count();
    ctx.check(m0 == 1, || format!("max_count(E0) = {m0}"));
    ctx.check(e0.is_subset(&e), || "E0 ⊄ E".into());
    let pi = products::dot_product_set(&e, &f).expect("nonempty");
    let pi0 = products::dot_product_set(&e0, &f).expect("nonempty");
    ctx.check(pi0.is_subset(&pi), || "Π(E0,F) ⊄ Π(E,F)".into());
    let again = products::extract_e0(&e).expect("nonempty");
    ctx.check(again == e0, || "extract_e0 not deterministic".into());
}

fn sphere_distance_trial(ctx: &mut Ctx, seed: u64, _: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let i = 1 + (derive_seed(seed, 50) % (q as u64 - 1)) as i64;
    let j = 1 + (derive_seed(seed, 51) % (q as u64 - 1)) as i64;
    let pair = (|| -> Result<_> {
        Ok((
            random_subset(&PointSet::sphere(q, d, i)?, derive_seed(seed, 52))?,
            random_subset(&PointSet::sphere(q, d, j)?, derive_seed(seed, 53))?,
        ))
    })();
    let (e, f) = match pair {
        Ok(p) => p,
        Err(err) => return ctx.error(err),
    };
    let pi = products::dot_product_set(&e, &f).expect("nonempty");
    let dist = products::distance_set(&e, &f).expect("nonempty");
    ctx.check(dist.len() == pi.len(), || {
        format!("S_{i} × S_{j}: |D| = {} != |Π| = {}", dist.len(), pi.len())
    });
    let field = Field::new(q as u64).expect("prime");
    let mapped: std::collections::BTreeSet<u32> = pi
        .iter()
        .map(|&t| field.reduce(i + j - 2 * t as i64))
        .collect();
    ctx.check(mapped == dist, || format!("S_{i} × S_{j}: D != i + j − 2Π"));
}

fn projection_trial(ctx: &mut Ctx, seed: u64, _: &VerifyConfig) {
    let (q, d) = (ctx.q, ctx.d);
    let built = (|| -> Result<_> {
        let p = PointSet::paraboloid(q, d)?;
        let h = PointSet::paraboloid_base(q, d)?;
        let rest = PointSet::from_ranks(
            q,
            d,
            p.ranks()
                .iter()
                .filter(|&&r| !h.contains_rank(r as u64))
                .map(|&r| r as u64),
        )?;
        let b = random_subset(&h, derive_seed(seed, 60))?;
        let g = random_subset(&rest, derive_seed(seed, 61))?;
        let f = random_subset(&full(q, d), derive_seed(seed, 62))?;
        Ok((b.union(&g)?, b, g, f))
    })();
    let (e, b, g, f) = match built {
        Ok(x) => x,
        Err(err) => return ctx.error(err),
    };
    let (g2, b2) = match e.paraboloid_split() {
        Ok(x) => x,
        Err(err) => return ctx.error(err),
    };
    ctx.check(g2 == g && b2 == b, || {
        "paraboloid_split did not recover (G, B)".into()
    });
    let m = line_table(&g2).max_count();
    ctx.check(m <= 1, || format!("max |G ∩ l_x| = {m}"));
    let high = products::dot_product_set(&b2, &f).expect("nonempty");
    let low =
        products::dot_product_set(&b2.project().unwrap(), &f.project().unwrap()).expect("nonempty");
    ctx.check(high == low, || {
        format!(
            "|Π(B,F)| = {} != |Π(π(B),π(F))| = {}",
            high.len(),
            low.len()
        )
    });
}

fn sphere_lines(ctx: &mut Ctx) {
    let (q, d) = (ctx.q, ctx.d);
    for j in 1..q as i64 {
        let s = PointSet::sphere(q, d, j).expect("cell within cap");
        let m = line_table(&s).max_count();
        ctx.check(m <= 2, || format!("max |S_{j} ∩ l_x| = {m}"));
        ctx.check(!s.contains_origin(), || format!("0 ∈ S_{j}"));
    }
}

fn paraboloid_lines(ctx: &mut Ctx) {
    let (q, d) = (ctx.q, ctx.d);
    let p = PointSet::paraboloid(q, d).expect("cell within cap");
    ctx.check(p.len() as u64 == (q as u64).pow(d as u32 - 1), || {
        format!("|P| = {}", p.len())
    });
    let (g, _) = p.paraboloid_split().expect("P ⊂ P");
    let m = line_table(&g).max_count();
    ctx.check(m <= 1, || format!("max |G ∩ l_x| = {m}"));
    // Every point of H \ {0} spans a full punctured line inside P.
    let h = PointSet::paraboloid_base(q, d).expect("cell within cap");
    let mp = line_table(&p).max_count();
    let expect_full = h.len() > 1;
    ctx.check((mp == q - 1) == expect_full, || {
        format!("max |P ∩ l_x| = {mp} but |H| = {}", h.len())
    });
    if expect_full {
        ctx.out.notes.push(format!(
            "note paraboloid-lines q={q} d={d}: isotropic line with |P ∩ l_x| = {}",
            q - 1
        ));
    }
}

fn translate_lines(ctx: &mut Ctx) {
    let (q, d) = (ctx.q, ctx.d);
    let p = Variety::paraboloid(q, d).expect("d >= 2");
    let pbar = Variety::conjugate_paraboloid(q, d).expect("d >= 2");
    let n = (q as u64).pow(d as u32);
    let mut in_pbar_worst = 0;
    for r in 0..n {
        let a = Vector::unrank(r, q, d).expect("rank in range");
        let shifted =
            PointSet::from_variety(&p.translate(&a).expect("same space")).expect("cell within cap");
        let m = line_table(&shifted).max_count();
        if pbar.contains(&a).expect("same space") {
            in_pbar_worst = in_pbar_worst.max(m);
            continue;
        }
        ctx.check(m <= 2, || format!("a = {a}: max |(P+a) ∩ l_x| = {m}"));
    }
    ctx.out.notes.push(format!(
        "note translate-lines q={q} d={d}: worst count over a ∈ P̄ is {in_pbar_worst}"
    ));
}
