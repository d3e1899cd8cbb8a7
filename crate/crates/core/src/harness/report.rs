//! The per-pair analysis: every scalar the library computes for `(E, F)`,
//! cross-checked against each other before the report is handed out.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::products::{self, bounds_from_parts, second_moment_bound};
use crate::spectral::{self, dft, energy_from_parts, line_table};

/// Absolute slack on floating-side inequalities.
pub const FLOAT_TOL: f64 = 1e-6;

/// Relative slack on the second-moment inequality, whose right side reaches
/// ~1e13 where one ulp already exceeds [`FLOAT_TOL`].
pub const SECOND_MOMENT_REL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub q: u32,
    pub d: usize,
    pub size_e: usize,
    pub size_f: usize,
    /// `|Π(E,F)|`
    pub pi_size: usize,
    /// `|D(E,F)|`
    pub distance_size: usize,
    /// `Σ_t ν(t)²`
    pub second_moment: u128,
    pub cs_bound_num: u128,
    pub cs_bound_den: u128,
    pub cs_bound: f64,
    pub fourier_bound: f64,
    pub valid_fourier: bool,
    /// `𝔅(E,F)`
    pub energy_b: f64,
    pub max_count_e: u32,
    pub lines_hit_e: usize,
    /// `None` when `E ⊂ {0}`.
    pub e0_size: Option<usize>,
    pub pi_e0_f: Option<usize>,
    pub salem_e: f64,
    pub salem_f: f64,
    pub seed: u64,
    pub e_label: String,
    pub f_label: String,
}

pub const CSV_COLUMNS: &[&str] = &[
    "q",
    "d",
    "size_e",
    "size_f",
    "pi_size",
    "distance_size",
    "second_moment",
    "cs_bound_num",
    "cs_bound_den",
    "cs_bound",
    "fourier_bound",
    "valid_fourier",
    "energy_b",
    "max_count_e",
    "lines_hit_e",
    "e0_size",
    "pi_e0_f",
    "salem_e",
    "salem_f",
    "seed",
    "e_label",
    "f_label",
];

/// `Some(j)` if every point of `set` has norm `j`.
fn common_norm(set: &PointSet) -> Option<u32> {
    let mut norms = set.iter().map(|x| x.norm());
    let first = norms.next()?;
    norms.all(|n| n == first).then_some(first)
}

/// Full analysis of a pair. Fails with [`Error::Invariant`] if any of the
/// inequalities that must hold between the computed quantities does not.
pub fn analyze(
    e: &PointSet,
    f: &PointSet,
    seed: u64,
    e_label: &str,
    f_label: &str,
) -> Result<AnalysisReport> {
    e.same_space(f)?;
    if e.is_empty() || f.is_empty() {
        return Err(Error::EmptySet("analyze"));
    }
    let (q, d) = (e.q(), e.d());

    let nu = products::nu_histogram(e, f)?;
    let pi = nu.support();
    let distances = products::distance_set(e, f)?;
    let spec_e = dft(e);
    let spec_f = dft(f);
    let table = line_table(e);
    let energy = energy_from_parts(&table, &spec_f);
    let b = bounds_from_parts(e.len(), f.len(), q, d, &nu, energy, e.contains_origin());

    let (e0_size, pi_e0_f) = match products::extract_e0(e) {
        Ok(e0) => {
            let pi0 = products::dot_product_set(&e0, f)?;
            let t0 = line_table(&e0);
            check(t0.max_count() == 1, || {
                format!("max_count(E0) = {} != 1", t0.max_count())
            })?;
            check(e0.len() == table.lines_hit(), || {
                format!("|E0| = {} != lines_hit = {}", e0.len(), table.lines_hit())
            })?;
            check(e0.is_subset(e), || "E0 not contained in E".into())?;
            check(pi0.is_subset(&pi), || {
                "Π(E0,F) not contained in Π(E,F)".into()
            })?;
            (Some(e0.len()), Some(pi0.len()))
        }
        Err(Error::EmptySet(_)) => (None, None),
        Err(other) => return Err(other),
    };

    let report = AnalysisReport {
        q,
        d,
        size_e: e.len(),
        size_f: f.len(),
        pi_size: pi.len(),
        distance_size: distances.len(),
        second_moment: nu.second_moment,
        cs_bound_num: b.cs_bound.num,
        cs_bound_den: b.cs_bound.den,
        cs_bound: b.cs_bound.to_f64(),
        fourier_bound: b.fourier_bound,
        valid_fourier: b.valid_fourier,
        energy_b: energy,
        max_count_e: table.max_count(),
        lines_hit_e: table.lines_hit(),
        e0_size,
        pi_e0_f,
        salem_e: spectral::salem_level(&spec_e, e.len()),
        salem_f: spectral::salem_level(&spec_f, f.len()),
        seed,
        e_label: e_label.to_string(),
        f_label: f_label.to_string(),
    };

    check(nu.total() == (e.len() * f.len()) as u64, || {
        format!("Σν = {} != |E||F|", nu.total())
    })?;
    check(
        table.total() == (e.len() - e.contains_origin() as usize) as u64,
        || "line counts do not sum to |E \\ {0}|".into(),
    )?;
    check(b.cs_bound.le_integer(pi.len() as u64), || {
        format!("cs_bound {} > |Π| = {}", b.cs_bound, pi.len())
    })?;
    let plancherel = max_count_energy_cap(table.max_count(), f.len(), q, d);
    check(energy <= plancherel + 1e-9, || {
        format!("𝔅 = {energy} exceeds max_count·|F|/q^d = {plancherel}")
    })?;

    if let (Some(i), Some(j)) = (common_norm(e), common_norm(f)) {
        // ‖x − y‖ = i + j − 2 x·y maps Π bijectively onto D
        let mapped: BTreeSet<u32> = pi
            .iter()
            .map(|&t| crate::field::reduce(i as i64 + j as i64 - 2 * t as i64, q))
            .collect();
        check(mapped == distances, || {
            format!(
                "sphere pair: D(E,F) != {{i + j − 2t : t ∈ Π}} (|D| = {}, |Π| = {})",
                distances.len(),
                pi.len()
            )
        })?;
    }

    if b.valid_fourier {
        let rhs = second_moment_bound(e.len(), f.len(), q, d, energy);
        check(
            nu.second_moment as f64 <= rhs + FLOAT_TOL + SECOND_MOMENT_REL_TOL * rhs,
            || format!("Σν² = {} exceeds {rhs}", nu.second_moment),
        )?;
        let fb = b.fourier_bound;
        check(fb <= pi.len() as f64 + FLOAT_TOL, || {
            format!("fourier_bound {fb} > |Π| = {}", pi.len())
        })?;
        check(pi.len() as f64 >= (fb - FLOAT_TOL).ceil(), || {
            format!("|Π| = {} < ceil(fourier_bound) for {fb}", pi.len())
        })?;
        for (name, floor) in closed_form_floors(e, f, report.salem_f) {
            check(fb >= floor - FLOAT_TOL, || {
                format!("fourier_bound {fb} below closed form {name} = {floor}")
            })?;
        }
    }
    Ok(report)
}

/// `max_count · |F| / q^d`, the Plancherel cap on `𝔅`.
pub fn max_count_energy_cap(max_count: u32, size_f: usize, q: u32, d: usize) -> f64 {
    max_count as f64 * size_f as f64 / (q as f64).powi(d as i32)
}

/// The constant-free lower bounds on the Fourier-side bound that apply to
/// `(E, F)`, given `0 ∉ E`:
///
/// * `sphere`: `qK/(K+2)`, `K = |E||F|/q^d`, when `E` lies on some `S_j`, `j ≠ 0`;
/// * `lines`: `qK'/(K'+1)`, `K' = |E||F|/q^{d+1}`;
/// * `salem`: `q|F|/(|F| + s²q)` with `s` the Salem level of `F`.
pub fn closed_form_floors(e: &PointSet, f: &PointSet, salem_f: f64) -> Vec<(&'static str, f64)> {
    let q = e.q() as f64;
    let qd = q.powi(e.d() as i32);
    let ef = e.len() as f64 * f.len() as f64;
    let mut out = Vec::with_capacity(3);
    if matches!(common_norm(e), Some(j) if j != 0) {
        let k = ef / qd;
        out.push(("sphere", q * k / (k + 2.0)));
    }
    let k1 = ef / (qd * q);
    out.push(("lines", q * k1 / (k1 + 1.0)));
    let sf = f.len() as f64;
    out.push(("salem", q * sf / (sf + salem_f * salem_f * q)));
    out
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

impl AnalysisReport {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    /// Header row followed by this report.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        w.write_record(self.csv_fields())?;
        w.flush()?;
        Ok(())
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.q.to_string(),
            self.d.to_string(),
            self.size_e.to_string(),
            self.size_f.to_string(),
            self.pi_size.to_string(),
            self.distance_size.to_string(),
            self.second_moment.to_string(),
            self.cs_bound_num.to_string(),
            self.cs_bound_den.to_string(),
            fmt_f64(self.cs_bound),
            fmt_f64(self.fourier_bound),
            self.valid_fourier.to_string(),
            fmt_f64(self.energy_b),
            self.max_count_e.to_string(),
            self.lines_hit_e.to_string(),
            opt(self.e0_size),
            opt(self.pi_e0_f),
            fmt_f64(self.salem_e),
            fmt_f64(self.salem_f),
            self.seed.to_string(),
            self.e_label.clone(),
            self.f_label.clone(),
        ]
    }
}

/// Shortest round-trip representation, so CSV output is bit-reproducible.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;

    #[test]
    fn sphere_fixture() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        let r = analyze(&s1, &s1, 5, "S1", "S1").unwrap();
        assert_eq!(r.pi_size, 3);
        assert_eq!(r.second_moment, 96);
        assert_eq!((r.cs_bound_num, r.cs_bound_den), (256, 96));
        assert_eq!(r.e0_size, Some(2));
        assert_eq!(r.seed, 5);
        assert!(r.valid_fourier);
    }

    #[test]
    fn origin_pair() {
        let o = PointSet::from_vectors(3, 2, &[Vector::zero(3, 2)]).unwrap();
        let r = analyze(&o, &o, 0, "o", "o").unwrap();
        assert!(!r.valid_fourier);
        assert_eq!(r.pi_size, 1);
        assert_eq!(r.e0_size, None);
    }

    #[test]
    fn mismatched_spaces() {
        let a = PointSet::full_space(3, 2).unwrap();
        let b = PointSet::full_space(5, 2).unwrap();
        assert!(matches!(
            analyze(&a, &b, 0, "", ""),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn csv_shape() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        let r = analyze(&s1, &s1, 1, "a", "b").unwrap();
        assert_eq!(r.csv_fields().len(), CSV_COLUMNS.len());
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("q,d,size_e,"));
        let mut json = Vec::new();
        r.write_json(&mut json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["second_moment"], 96);
        assert_eq!(v["e0_size"], 2);
    }
}
