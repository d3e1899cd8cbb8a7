//! Fourier transforms of indicator functions, line-intersection tables and the
//! energy `𝔅(E,F) = Σ_{x≠0} |E ∩ l_x| |F̂(x)|²`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field};
use crate::geometry::{LineRep, Vector};
use crate::pointset::PointSet;

/// `values[rank(m)] = Ê(m) = q^{−d} Σ_x E(x) ψ(−x·m)`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    q: u32,
    d: usize,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, m: &Vector) -> Complex64 {
        self.values[m.rank() as usize]
    }

    /// `Σ_m |Ê(m)|²`.
    pub fn total_power(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `max_{m≠0} |Ê(m)|`.
    pub fn max_nonzero_modulus(&self) -> f64 {
        self.values[1..]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Separable transform: `d` passes of length-`q` transforms, one per axis.
pub fn dft(set: &PointSet) -> Spectrum {
    let q = set.q() as usize;
    let d = set.d();
    let field = Field::new(q as u64).expect("point sets carry a valid modulus");
    let roots = field.roots();
    // conj_roots[k] = ψ(−k)
    let conj_roots: Vec<Complex64> = (0..q).map(|k| roots[(q - k) % q]).collect();

    let mut values = vec![Complex64::new(0.0, 0.0); set.ambient_len()];
    for &r in set.ranks() {
        values[r as usize] = Complex64::new(1.0, 0.0);
    }

    let mut stride = 1usize;
    for _axis in 0..d {
        let block = stride * q;
        values.par_chunks_mut(block).for_each(|chunk| {
            let mut fiber = vec![Complex64::new(0.0, 0.0); q];
            for offset in 0..stride {
                for (t, slot) in fiber.iter_mut().enumerate() {
                    *slot = chunk[offset + t * stride];
                }
                for m in 0..q {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut k = 0usize;
                    for &x in &fiber {
                        if x.re != 0.0 || x.im != 0.0 {
                            acc += x * conj_roots[k];
                        }
                        k += m;
                        if k >= q {
                            k -= q;
                        }
                    }
                    chunk[offset + m * stride] = acc;
                }
            }
        });
        stride = block;
    }

    let scale = 1.0 / set.ambient_len() as f64;
    values.iter_mut().for_each(|v| *v *= scale);
    Spectrum {
        q: q as u32,
        d,
        values,
    }
}

/// Direct `O(q^d |E|)` evaluation of the definition. Used by the verification
/// suites as a cross-check on [`dft`].
pub fn naive_dft(set: &PointSet) -> Spectrum {
    let q = set.q();
    let d = set.d();
    let field = Field::new(q as u64).expect("point sets carry a valid modulus");
    let members = set.coords_flat();
    let n = set.ambient_len();
    let scale = 1.0 / n as f64;
    let values = (0..n as u64)
        .into_par_iter()
        .map(|r| {
            let m = Vector::unrank(r, q, d).expect("rank in range");
            let mut acc = Complex64::new(0.0, 0.0);
            for x in members.chunks_exact(d) {
                let t = crate::geometry::dot_coords(x, m.coords(), q);
                acc += field.character(((q - t) % q) as u64);
            }
            acc * scale
        })
        .collect();
    Spectrum { q, d, values }
}

/// `|Σ_m |Ê(m)|² − |E|/q^d|`.
pub fn plancherel_defect(spectrum: &Spectrum, size: usize) -> f64 {
    let expected = size as f64 / spectrum.values.len() as f64;
    (spectrum.total_power() - expected).abs()
}

/// `s(E) = max_{m≠0} |Ê(m)| q^d / √|E|`.
pub fn salem_constant(set: &PointSet) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptySet("salem_constant"));
    }
    Ok(salem_level(&dft(set), set.len()))
}

/// Same as [`salem_constant`] for an already computed spectrum.
pub fn salem_level(spectrum: &Spectrum, size: usize) -> f64 {
    spectrum.max_nonzero_modulus() * spectrum.values.len() as f64 / (size as f64).sqrt()
}

/// `|E ∩ l_x|` for every line through the origin that `E` meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTable {
    q: u32,
    d: usize,
    /// Keyed by the rank of the canonical representative; zero counts omitted.
    counts: BTreeMap<u64, u32>,
    max_count: u32,
}

impl LineTable {
    pub fn count(&self, line: &LineRep) -> u32 {
        self.counts.get(&line.rank()).copied().unwrap_or(0)
    }

    pub fn max_count(&self) -> u32 {
        self.max_count
    }

    /// Number of lines with count ≥ 1.
    pub fn lines_hit(&self) -> usize {
        self.counts.len()
    }

    /// `Σ_lines |E ∩ l_x| = |E \ {0}|`.
    pub fn total(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }

    /// Lines with nonzero count, in rank order of their representatives.
    pub fn iter(&self) -> impl Iterator<Item = (LineRep, u32)> + '_ {
        self.counts.iter().map(move |(&r, &c)| {
            let rep = Vector::unrank(r, self.q, self.d).expect("rank in range");
            (rep.line_rep().expect("nonzero rep"), c)
        })
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u64, u32> {
        &self.counts
    }
}

/// Maps member ranks to the rank of their line representative.
pub(crate) struct LineIndexer {
    q: u64,
    d: usize,
    inverses: Vec<u64>,
}

impl LineIndexer {
    pub(crate) fn new(q: u32, d: usize) -> Self {
        let inverses = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    inv_mod(a, q).unwrap() as u64
                }
            })
            .collect();
        LineIndexer {
            q: q as u64,
            d,
            inverses,
        }
    }

    /// `None` for the origin.
    pub(crate) fn rep_rank(&self, rank: u64) -> Option<u64> {
        if rank == 0 {
            return None;
        }
        // The first nonzero coordinate is the lowest-order nonzero digit.
        let mut r = rank;
        let mut low = 1u64;
        while r.is_multiple_of(self.q) {
            r /= self.q;
            low *= self.q;
        }
        let s = self.inverses[(r % self.q) as usize];
        let mut out = 0u64;
        let mut place = low;
        for _ in 0..self.d {
            if r == 0 {
                break;
            }
            out += (r % self.q) * s % self.q * place;
            r /= self.q;
            place *= self.q;
        }
        Some(out)
    }
}

pub fn line_table(set: &PointSet) -> LineTable {
    let indexer = LineIndexer::new(set.q(), set.d());
    let mut counts = BTreeMap::new();
    for &r in set.ranks() {
        if let Some(l) = indexer.rep_rank(r as u64) {
            *counts.entry(l).or_insert(0u32) += 1;
        }
    }
    let max_count = counts.values().copied().max().unwrap_or(0);
    LineTable {
        q: set.q(),
        d: set.d(),
        counts,
        max_count,
    }
}

/// `𝔅(E,F)`, summed line by line.
pub fn energy_b(e: &PointSet, f: &PointSet) -> Result<f64> {
    e.same_space(f)?;
    Ok(energy_from_parts(&line_table(e), &dft(f)))
}

/// `Σ_L |E ∩ L| Σ_{x∈L} |F̂(x)|²` from a line table of `E` and the spectrum of `F`.
pub fn energy_from_parts(table: &LineTable, spectrum: &Spectrum) -> f64 {
    let q = spectrum.q as u64;
    let d = spectrum.d;
    let mut total = 0.0;
    let mut coords = vec![0u64; d];
    for (&rep_rank, &count) in table.raw() {
        let mut r = rep_rank;
        for c in coords.iter_mut() {
            *c = r % q;
            r /= q;
        }
        let mut on_line = 0.0;
        for s in 1..q {
            let rank = coords
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * q + c * s % q);
            on_line += spectrum.values[rank as usize].norm_sqr();
        }
        total += count as f64 * on_line;
    }
    total
}
