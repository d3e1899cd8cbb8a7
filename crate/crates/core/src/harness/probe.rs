//! Empirical probe of varieties missing the origin: draw `E ⊂ V`,
//! `F ⊂ F_q^d` at `|E||F| ≈ K q^d` and record the smallest `|Π(E,F)|/q`.

use std::io::Write;

use serde::Serialize;

use super::report::fmt_f64;
use super::sweep::{run_cell, write_rows, CellStats};
use super::trials::trial_seed;
use crate::error::{Error, Result};
use crate::geometry::Variety;
use crate::pointset::PointSet;
use crate::spectral::line_table;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    /// `a1,…,ad;b1,…,bd;c`.
    pub variety: String,
    pub qs: Vec<u32>,
    pub ks: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub q: u32,
    pub d: usize,
    pub variety: String,
    pub k: f64,
    pub trials: usize,
    pub seed: u64,
    pub size_v: usize,
    pub max_count_v: u32,
    pub stats: CellStats,
}

pub const PROBE_COLUMNS: &[&str] = &[
    "q",
    "d",
    "variety",
    "k",
    "k_effective",
    "trials",
    "seed",
    "size_v",
    "max_count_v",
    "size_e",
    "size_f",
    "min_pi_over_q",
    "mean_pi_over_q",
    "min_fourier_over_q",
];

impl ProbeRow {
    pub fn csv_fields(&self) -> Vec<String> {
        let s = &self.stats;
        vec![
            self.q.to_string(),
            self.d.to_string(),
            self.variety.clone(),
            fmt_f64(self.k),
            fmt_f64(s.k_effective),
            self.trials.to_string(),
            self.seed.to_string(),
            self.size_v.to_string(),
            self.max_count_v.to_string(),
            s.size_e.to_string(),
            s.size_f.to_string(),
            fmt_f64(s.min_pi_over_q),
            fmt_f64(s.mean_pi_over_q),
            s.min_fourier_over_q.map(fmt_f64).unwrap_or_default(),
        ]
    }
}

/// Refuses (with [`Error::OriginInVariety`]) if the variety contains the
/// origin for any requested `q`.
pub fn run_probe(config: &ProbeConfig) -> Result<Vec<ProbeRow>> {
    if config.trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let varieties = config
        .qs
        .iter()
        .map(|&q| {
            let v = Variety::parse(&config.variety, q)?;
            if v.contains_origin() {
                return Err(Error::OriginInVariety);
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for v in &varieties {
        let (q, d) = (v.q(), v.dim());
        let points = PointSet::from_variety(v)?;
        if points.is_empty() {
            return Err(Error::EmptySet("probe variety"));
        }
        let max_count_v = line_table(&points).max_count();
        let full = PointSet::full_space(q, d)?;
        for (ki, &k) in config.ks.iter().enumerate() {
            let cell_seed = trial_seed(config.seed, 0x9806, ((q as u64) << 16) | ki as u64);
            let label = v.to_string();
            let stats = run_cell(
                &points,
                &full,
                k,
                config.trials,
                cell_seed,
                (&label, "full-space"),
                false,
            )?;
            rows.push(ProbeRow {
                q,
                d,
                variety: label,
                k,
                trials: config.trials,
                seed: config.seed,
                size_v: points.len(),
                max_count_v,
                stats,
            });
        }
    }
    Ok(rows)
}

pub fn write_probe_csv<W: Write>(rows: &[ProbeRow], out: W) -> Result<()> {
    let fields: Vec<Vec<String>> = rows.iter().map(ProbeRow::csv_fields).collect();
    write_rows(PROBE_COLUMNS, &fields, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(variety: &str, qs: Vec<u32>) -> ProbeConfig {
        ProbeConfig {
            variety: variety.into(),
            qs,
            ks: vec![2.0],
            trials: 5,
            seed: 4,
        }
    }

    #[test]
    fn refuses_paraboloid() {
        assert!(matches!(
            run_probe(&config("1,1,0;0,0,-1;0", vec![5])),
            Err(Error::OriginInVariety)
        ));
    }

    #[test]
    fn shifted_paraboloid_has_short_lines() {
        // P + (0,0,1): x1² + x2² = x3 − 1
        let rows = run_probe(&config("1,1,0;0,0,-1;1", vec![5, 7])).unwrap();
        assert_eq!(rows.len(), 2);
        for r in rows {
            assert!(r.max_count_v <= 2);
            assert_eq!(r.size_v as u64, (r.q as u64).pow(2));
        }
    }

    #[test]
    fn unit_sphere() {
        let rows = run_probe(&config("1,1,1;0,0,0;-1", vec![7])).unwrap();
        assert!(rows[0].max_count_v <= 2);
        assert!(rows[0].stats.min_pi_over_q > 0.0);
    }
}
