//! Exact dot-product and distance sets, the counting function `ν`, and the
//! two lower bounds for `|Π(E,F)|`.
//!
//! Everything combinatorial here is brute force over `E × F` in integer
//! arithmetic. Only the Fourier-side bound touches floating point.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dot_coords, Vector};
use crate::pointset::PointSet;
use crate::spectral::{self, LineIndexer};

const ROWS_PER_TASK: usize = 64;

/// `counts[t] = #{(x, y) ∈ E × F : k(x, y) = t}` for a pair kernel `k`.
fn pair_histogram<K>(e: &PointSet, f: &PointSet, kernel: K) -> Vec<u64>
where
    K: Fn(&[u32], &[u32]) -> u32 + Sync,
{
    let q = e.q() as usize;
    let d = e.d();
    let xs = e.coords_flat();
    let ys = f.coords_flat();
    xs.par_chunks(d * ROWS_PER_TASK)
        .map(|block| {
            let mut counts = vec![0u64; q];
            for x in block.chunks_exact(d) {
                for y in ys.chunks_exact(d) {
                    counts[kernel(x, y) as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; q],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn support(counts: &[u64]) -> BTreeSet<u32> {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(t, _)| t as u32)
        .collect()
}

fn nonempty_pair(e: &PointSet, f: &PointSet, what: &'static str) -> Result<()> {
    e.same_space(f)?;
    if e.is_empty() || f.is_empty() {
        return Err(Error::EmptySet(what));
    }
    Ok(())
}

fn dot_kernel(q: u32) -> impl Fn(&[u32], &[u32]) -> u32 + Sync {
    move |x, y| dot_coords(x, y, q)
}

fn distance_kernel(q: u32) -> impl Fn(&[u32], &[u32]) -> u32 + Sync {
    move |x, y| {
        let s: u64 = x
            .iter()
            .zip(y)
            .map(|(&a, &b)| {
                let diff = (a as i64 - b as i64).unsigned_abs();
                diff * diff
            })
            .sum();
        (s % q as u64) as u32
    }
}

/// `Π(E,F) = {x·y : x ∈ E, y ∈ F}`.
pub fn dot_product_set(e: &PointSet, f: &PointSet) -> Result<BTreeSet<u32>> {
    nonempty_pair(e, f, "dot_product_set")?;
    Ok(support(&pair_histogram(e, f, dot_kernel(e.q()))))
}

/// `D(E,F) = {‖x − y‖ : x ∈ E, y ∈ F}`.
pub fn distance_set(e: &PointSet, f: &PointSet) -> Result<BTreeSet<u32>> {
    nonempty_pair(e, f, "distance_set")?;
    Ok(support(&pair_histogram(e, f, distance_kernel(e.q()))))
}

/// `Π(x,E) = {x·y : y ∈ E}`.
pub fn pinned_product_set(x: &Vector, e: &PointSet) -> Result<BTreeSet<u32>> {
    if e.is_empty() {
        return Err(Error::EmptySet("pinned_product_set"));
    }
    if x.q() != e.q() || x.dim() != e.d() {
        return Err(Error::DimensionMismatch {
            expected: e.d(),
            found: x.dim(),
        });
    }
    let ys = e.coords_flat();
    Ok(ys
        .chunks_exact(e.d())
        .map(|y| dot_coords(x.coords(), y, e.q()))
        .collect())
}

/// The counting function `ν(t) = #{(x, y) ∈ E × F : x·y = t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuHistogram {
    pub counts: Vec<u64>,
    pub second_moment: u128,
}

impl NuHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `|Π(E,F)|`.
    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        support(&self.counts)
    }
}

pub fn nu_histogram(e: &PointSet, f: &PointSet) -> Result<NuHistogram> {
    e.same_space(f)?;
    let counts = pair_histogram(e, f, dot_kernel(e.q()));
    let second_moment = counts.iter().map(|&c| c as u128 * c as u128).sum();
    Ok(NuHistogram {
        counts,
        second_moment,
    })
}

/// A nonnegative rational kept as an unreduced pair; compared against
/// integers by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: u128,
    pub den: u128,
}

impl ExactRatio {
    /// `self ≤ n`, exactly.
    pub fn le_integer(&self, n: u64) -> bool {
        self.num <= n as u128 * self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `|E|²|F|² / Σ_t ν(t)²`.
    pub cs_bound: ExactRatio,
    /// `|E|²|F|² / (|E|²|F|²/q + q^{2d−1}|E|·𝔅(E,F))`.
    pub fourier_bound: f64,
    /// False when `0 ∈ E`; the Fourier form is not a bound then.
    pub valid_fourier: bool,
    /// `𝔅(E,F)`.
    pub energy: f64,
}

/// Right-hand side of the second-moment inequality:
/// `|E|²|F|²/q + q^{2d−1}|E|·𝔅`.
pub fn second_moment_bound(size_e: usize, size_f: usize, q: u32, d: usize, energy: f64) -> f64 {
    let (e, f, q) = (size_e as f64, size_f as f64, q as f64);
    e * e * f * f / q + q.powi(2 * d as i32 - 1) * e * energy
}

/// The Fourier-side lower bound in its constant-free form.
pub fn fourier_bound(size_e: usize, size_f: usize, q: u32, d: usize, energy: f64) -> f64 {
    let (e, f) = (size_e as f64, size_f as f64);
    e * e * f * f / second_moment_bound(size_e, size_f, q, d, energy)
}

/// Bounds from an already computed histogram and energy.
pub fn bounds_from_parts(
    size_e: usize,
    size_f: usize,
    q: u32,
    d: usize,
    nu: &NuHistogram,
    energy: f64,
    origin_in_e: bool,
) -> BoundReport {
    let ef = size_e as u128 * size_f as u128;
    BoundReport {
        cs_bound: ExactRatio {
            num: ef * ef,
            den: nu.second_moment,
        },
        fourier_bound: fourier_bound(size_e, size_f, q, d, energy),
        valid_fourier: !origin_in_e,
        energy,
    }
}

pub fn bounds(e: &PointSet, f: &PointSet) -> Result<BoundReport> {
    nonempty_pair(e, f, "bounds")?;
    let nu = nu_histogram(e, f)?;
    let energy = spectral::energy_b(e, f)?;
    Ok(bounds_from_parts(
        e.len(),
        f.len(),
        e.q(),
        e.d(),
        &nu,
        energy,
        e.contains_origin(),
    ))
}

/// One point of `E \ {0}` on each line through the origin that `E` meets,
/// choosing the smallest rank on each line.
pub fn extract_e0(e: &PointSet) -> Result<PointSet> {
    let indexer = LineIndexer::new(e.q(), e.d());
    let mut seen = BTreeSet::new();
    let mut picked = Vec::new();
    // ranks() is increasing, so the first hit on a line is its smallest rank
    for &r in e.ranks() {
        if let Some(line) = indexer.rep_rank(r as u64) {
            if seen.insert(line) {
                picked.push(r as u64);
            }
        }
    }
    if picked.is_empty() {
        return Err(Error::EmptySet("extract_e0 (E \\ {0})"));
    }
    PointSet::from_ranks(e.q(), e.d(), picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::line_table;

    fn v(q: u32, c: &[u32]) -> Vector {
        Vector::new(q, c.to_vec()).unwrap()
    }

    fn set(q: u32, rows: &[&[u32]]) -> PointSet {
        let vs: Vec<Vector> = rows.iter().map(|c| v(q, c)).collect();
        PointSet::from_vectors(q, rows[0].len(), &vs).unwrap()
    }

    #[test]
    fn product_set_examples() {
        let e = set(3, &[&[1, 0]]);
        let f = set(3, &[&[0, 1]]);
        assert_eq!(dot_product_set(&e, &f).unwrap(), BTreeSet::from([0]));
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        assert_eq!(
            dot_product_set(&s1, &s1).unwrap(),
            BTreeSet::from([0, 1, 2])
        );
        let full = PointSet::full_space(5, 2).unwrap();
        assert_eq!(dot_product_set(&full, &full).unwrap().len(), 5);
        let empty = PointSet::empty(3, 2).unwrap();
        assert!(matches!(
            dot_product_set(&empty, &f),
            Err(Error::EmptySet(_))
        ));
    }

    #[test]
    fn pinned_examples() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        assert_eq!(
            pinned_product_set(&v(3, &[1, 0]), &s1).unwrap(),
            BTreeSet::from([0, 1, 2])
        );
        assert_eq!(
            pinned_product_set(&Vector::zero(3, 2), &s1).unwrap(),
            BTreeSet::from([0])
        );
        assert!(pinned_product_set(&v(3, &[1, 0]), &PointSet::empty(3, 2).unwrap()).is_err());
    }

    #[test]
    fn distance_examples() {
        let o = set(3, &[&[0, 0]]);
        assert_eq!(distance_set(&o, &o).unwrap(), BTreeSet::from([0]));
        let e = set(3, &[&[1, 0]]);
        let f = set(3, &[&[0, 1]]);
        assert_eq!(distance_set(&e, &f).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn nu_examples() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        let nu = nu_histogram(&s1, &s1).unwrap();
        assert_eq!(nu.counts, vec![8, 4, 4]);
        assert_eq!(nu.second_moment, 96);
        let e = set(3, &[&[1, 0]]);
        let nu = nu_histogram(&e, &e).unwrap();
        assert_eq!(nu.counts, vec![0, 1, 0]);
        assert_eq!(nu.second_moment, 1);
    }

    #[test]
    fn bound_examples() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        let b = bounds(&s1, &s1).unwrap();
        assert_eq!(b.cs_bound, ExactRatio { num: 256, den: 96 });
        assert!(b.cs_bound.le_integer(3));
        assert!(!b.cs_bound.le_integer(2));

        let e = set(3, &[&[1, 0]]);
        let f = set(3, &[&[0, 1]]);
        let b = bounds(&e, &f).unwrap();
        assert!(b.valid_fourier);
        assert!((b.fourier_bound - 1.0).abs() < 1e-12);

        let o = set(3, &[&[0, 0]]);
        let b = bounds(&o, &o).unwrap();
        assert!(!b.valid_fourier);
        assert!(b.cs_bound.le_integer(1));
    }

    #[test]
    fn e0_examples() {
        // l_(1,0) ∪ {(1,1)} in F_3^2
        let e = set(3, &[&[1, 0], &[2, 0], &[1, 1]]);
        let e0 = extract_e0(&e).unwrap();
        assert_eq!(e0, set(3, &[&[1, 0], &[1, 1]]));

        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        let e0 = extract_e0(&s1).unwrap();
        assert_eq!(e0.len(), 2);
        assert_eq!(line_table(&e0).max_count(), 1);

        let spread = set(5, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(extract_e0(&spread).unwrap(), spread.without_origin());

        assert!(extract_e0(&set(3, &[&[0, 0]])).is_err());
    }
}
