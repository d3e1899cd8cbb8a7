//! Density sweeps: for each `(q, d, K)` cell, draw `trials` pairs with
//! `|E||F| ≈ K q^d` and record how large `Π(E,F)` gets.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{analyze, fmt_f64};
use super::trials::{sample_family, trial_seed, FamilySpec};
use crate::error::{Error, Result};
use crate::pointset::{derive_seed, PointSet};
use crate::products::pinned_product_set;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub qs: Vec<u32>,
    pub ds: Vec<usize>,
    pub e_family: FamilySpec,
    pub f_family: FamilySpec,
    pub ks: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Also record the fraction of `x ∈ E` with `|Π(x,E)| > q/2`.
    pub pinned: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if self.qs.is_empty() || self.ds.is_empty() || self.ks.is_empty() {
            return Err(Error::Parse("need at least one q, d and k".into()));
        }
        if let Some(k) = self.ks.iter().find(|k| !(k.is_finite() && **k > 0.0)) {
            return Err(Error::Parse(format!("density k={k} must be positive")));
        }
        Ok(())
    }
}

/// Aggregates of one `(q, d, K)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellStats {
    pub size_e: usize,
    pub size_f: usize,
    /// `|E||F| / q^d` actually achieved (family sizes may cap it).
    pub k_effective: f64,
    pub min_pi_over_q: f64,
    pub mean_pi_over_q: f64,
    /// Over trials with `0 ∉ E`; `None` if there were none.
    pub min_fourier_over_q: Option<f64>,
    pub mean_proj_ratio: Option<f64>,
    pub pinned_fraction: Option<f64>,
}

/// Sizes with `|E||F| ≥ K q^d` where the families allow it, balanced
/// between the two sides.
pub fn pick_sizes(k: f64, qd: usize, avail_e: usize, avail_f: usize) -> (usize, usize) {
    let target = k * qd as f64;
    let mut e = (target.sqrt().ceil() as usize).clamp(1, avail_e.max(1));
    let f = ((target / e as f64).ceil() as usize).clamp(1, avail_f.max(1));
    e = ((target / f as f64).ceil() as usize).clamp(1, avail_e.max(1));
    (e, f)
}

/// Runs one density cell over explicit ambient sets.
#[allow(clippy::too_many_arguments)]
pub fn run_cell(
    ambient_e: &PointSet,
    ambient_f: &PointSet,
    k: f64,
    trials: usize,
    cell_seed: u64,
    labels: (&str, &str),
    pinned: bool,
) -> Result<CellStats> {
    let (q, d) = (ambient_e.q(), ambient_e.d());
    if ambient_e.is_empty() || ambient_f.is_empty() {
        return Err(Error::EmptySet("sweep cell (family)"));
    }
    let qd = ambient_e.ambient_len();
    let (size_e, size_f) = pick_sizes(k, qd, ambient_e.len(), ambient_f.len());

    struct Trial {
        pi: usize,
        fourier: Option<f64>,
        proj: Option<f64>,
        pinned: Option<f64>,
    }
    let runs: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Trial> {
            let seed = derive_seed(cell_seed, t as u64);
            let e = super::trials::subset_of_size(ambient_e, size_e, derive_seed(seed, 0))?;
            let f = super::trials::subset_of_size(ambient_f, size_f, derive_seed(seed, 1))?;
            let report = analyze(&e, &f, seed, labels.0, labels.1)?;
            let proj = if d >= 2 {
                Some(f.project()?.len() as f64 / f.len() as f64)
            } else {
                None
            };
            let pinned = if pinned {
                let mut good = 0usize;
                for x in e.iter() {
                    if 2 * pinned_product_set(&x, &e)?.len() > q as usize {
                        good += 1;
                    }
                }
                Some(good as f64 / e.len() as f64)
            } else {
                None
            };
            Ok(Trial {
                pi: report.pi_size,
                fourier: report.valid_fourier.then_some(report.fourier_bound),
                proj,
                pinned,
            })
        })
        .collect::<Result<_>>()?;

    let qf = q as f64;
    let mean = |xs: Vec<f64>| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    Ok(CellStats {
        size_e,
        size_f,
        k_effective: size_e as f64 * size_f as f64 / qd as f64,
        min_pi_over_q: runs.iter().map(|r| r.pi).min().unwrap_or(0) as f64 / qf,
        mean_pi_over_q: runs.iter().map(|r| r.pi as f64).sum::<f64>() / runs.len() as f64 / qf,
        min_fourier_over_q: runs
            .iter()
            .filter_map(|r| r.fourier)
            .reduce(f64::min)
            .map(|x| x / qf),
        mean_proj_ratio: mean(runs.iter().filter_map(|r| r.proj).collect()),
        pinned_fraction: mean(runs.iter().filter_map(|r| r.pinned).collect()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: u32,
    pub d: usize,
    pub e_family: String,
    pub f_family: String,
    pub k: f64,
    pub trials: usize,
    pub seed: u64,
    pub stats: CellStats,
}

pub const SWEEP_COLUMNS: &[&str] = &[
    "q",
    "d",
    "e_family",
    "f_family",
    "k",
    "k_effective",
    "trials",
    "seed",
    "size_e",
    "size_f",
    "min_pi_over_q",
    "mean_pi_over_q",
    "min_fourier_over_q",
    "mean_proj_ratio",
    "pinned_fraction",
];

impl SweepRow {
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        let s = &self.stats;
        vec![
            self.q.to_string(),
            self.d.to_string(),
            self.e_family.clone(),
            self.f_family.clone(),
            fmt_f64(self.k),
            fmt_f64(s.k_effective),
            self.trials.to_string(),
            self.seed.to_string(),
            s.size_e.to_string(),
            s.size_f.to_string(),
            fmt_f64(s.min_pi_over_q),
            fmt_f64(s.mean_pi_over_q),
            opt(s.min_fourier_over_q),
            opt(s.mean_proj_ratio),
            opt(s.pinned_fraction),
        ]
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for &q in &config.qs {
        for &d in &config.ds {
            let fe = config.e_family.resolve(q, d)?;
            let ff = config.f_family.resolve(q, d)?;
            let ambient_e = fe.ambient(q, d)?;
            let ambient_f = ff.ambient(q, d)?;
            for (ki, &k) in config.ks.iter().enumerate() {
                let tag = ((q as u64) << 32) | ((d as u64) << 16) | ki as u64;
                let cell_seed = trial_seed(config.seed, 0x5EE9, tag);
                let e_label = config.e_family.label();
                let f_label = config.f_family.label();
                let stats = run_cell(
                    &ambient_e,
                    &ambient_f,
                    k,
                    config.trials,
                    cell_seed,
                    (&e_label, &f_label),
                    config.pinned,
                )?;
                rows.push(SweepRow {
                    q,
                    d,
                    e_family: e_label,
                    f_family: f_label,
                    k,
                    trials: config.trials,
                    seed: config.seed,
                    stats,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_rows<W: Write>(columns: &[&str], rows: &[Vec<String>], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(columns)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let fields: Vec<Vec<String>> = rows.iter().map(SweepRow::csv_fields).collect();
    write_rows(SWEEP_COLUMNS, &fields, out)
}

/// Draws `m` points of a family for ad-hoc use (examples, tests).
pub fn draw(spec: &FamilySpec, q: u32, d: usize, m: usize, seed: u64) -> Result<PointSet> {
    sample_family(&spec.resolve(q, d)?, q, d, m, seed)
}
