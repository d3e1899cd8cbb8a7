//! Family descriptions that resolve per `(q, d)`, and seeded subset draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{parse_int_list, Variety, Vector};
use crate::pointset::{derive_seed, sample, Family, PointSet, SampleSpec};

/// A family as named on the command line, before `q` and `d` are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    /// Sphere radius for `sphere`.
    pub j: Option<i64>,
    /// `a1,…,ad;b1,…,bd;c` for `variety` and `variety-translate`.
    pub variety: Option<String>,
    /// Shift vector for `variety-translate`.
    pub translate: Option<Vec<i64>>,
    /// Line representatives for `line-union`.
    pub lines: Vec<Vec<i64>>,
}

impl FamilySpec {
    pub fn named(name: &str) -> Self {
        FamilySpec {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn sphere(j: i64) -> Self {
        FamilySpec {
            j: Some(j),
            ..Self::named("sphere")
        }
    }

    pub fn variety(text: &str) -> Self {
        FamilySpec {
            variety: Some(text.to_string()),
            ..Self::named("variety")
        }
    }

    /// Applies a `key=value` parameter such as `j=2`.
    pub fn with_param(mut self, param: &str) -> Result<Self> {
        match param.split_once('=') {
            Some(("j", v)) => {
                self.j = Some(
                    v.trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("param j: {e}")))?,
                );
                Ok(self)
            }
            _ => Err(Error::Parse(format!(
                "unknown parameter `{param}` (expected j=<int>)"
            ))),
        }
    }

    pub fn resolve(&self, q: u32, d: usize) -> Result<Family> {
        let variety = || -> Result<Variety> {
            let text = self
                .variety
                .as_deref()
                .ok_or_else(|| Error::Parse(format!("family `{}` needs --variety", self.name)))?;
            let v = Variety::parse(text, q)?;
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
            Ok(v)
        };
        Ok(match self.name.as_str() {
            "variety" => Family::Variety(variety()?),
            "variety-translate" => {
                let shift = self
                    .translate
                    .as_deref()
                    .ok_or_else(|| Error::Parse("variety-translate needs --translate".into()))?;
                Family::VarietyTranslate {
                    variety: variety()?,
                    shift: Vector::from_signed(q, shift)?,
                }
            }
            "sphere" => Family::Sphere {
                j: self
                    .j
                    .ok_or_else(|| Error::Parse("sphere needs --param j=<int>".into()))?,
            },
            "paraboloid" => Family::Paraboloid,
            "paraboloid-base" => Family::ParaboloidBase,
            "line-union" => {
                if self.lines.is_empty() {
                    return Err(Error::Parse("line-union needs --lines".into()));
                }
                let lines = self
                    .lines
                    .iter()
                    .map(|l| Vector::from_signed(q, l)?.line_rep())
                    .collect::<Result<Vec<_>>>()?;
                Family::LineUnion(lines)
            }
            "uniform-random" => Family::UniformRandom,
            "punctured" => Family::Punctured,
            "full-space" => Family::FullSpace,
            other => {
                return Err(Error::Unknown {
                    kind: "family",
                    name: other.to_string(),
                })
            }
        })
    }

    /// Label used in reports, e.g. `sphere[j=1]`.
    pub fn label(&self) -> String {
        let mut s = self.name.clone();
        if let Some(j) = self.j {
            s.push_str(&format!("[j={j}]"));
        }
        if let Some(v) = &self.variety {
            s.push_str(&format!("[{v}]"));
        }
        if let Some(t) = &self.translate {
            let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("+({})", t.join(",")));
        }
        s
    }
}

/// Parses `1,2;0,1` into line representatives.
pub fn parse_line_list(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';').map(parse_int_list).collect()
}

/// Random nonempty subset of `ambient` of uniformly chosen size.
pub fn random_subset(ambient: &PointSet, seed: u64) -> Result<PointSet> {
    if ambient.is_empty() {
        return Err(Error::EmptySet("random_subset (ambient family)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0));
    let m = rng.gen_range(1..=ambient.len());
    subset_of_size(ambient, m, derive_seed(seed, 1))
}

/// Uniform `m`-subset of an explicit ambient set.
pub fn subset_of_size(ambient: &PointSet, m: usize, seed: u64) -> Result<PointSet> {
    if m > ambient.len() {
        return Err(Error::Infeasible {
            requested: m,
            available: ambient.len(),
        });
    }
    let ranks = ambient.ranks();
    let picked = pick_indices(ranks.len(), m, seed);
    PointSet::from_ranks(
        ambient.q(),
        ambient.d(),
        picked.into_iter().map(|i| ranks[i] as u64),
    )
}

/// Partial Fisher–Yates over `0..n`; same stream as [`sample`].
fn pick_indices(n: usize, m: usize, seed: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..m {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(m);
    pool
}

/// Draws `m` points of a named family.
pub fn sample_family(family: &Family, q: u32, d: usize, m: usize, seed: u64) -> Result<PointSet> {
    sample(&SampleSpec {
        q,
        d,
        family: family.clone(),
        size: Some(m),
        seed,
    })
}

/// Seed for one trial of one cell. `tag` distinguishes suites and cells.
pub fn trial_seed(master: u64, tag: u64, trial: u64) -> u64 {
    derive_seed(derive_seed(master, tag), trial)
}

/// Stable tag for a `(suite, q, d)` cell.
pub fn cell_tag(suite: u64, q: u32, d: usize) -> u64 {
    (suite << 48) | ((q as u64) << 16) | d as u64
}
