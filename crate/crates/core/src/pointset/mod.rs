//! Dense subsets of `F_q^d`.
//!
//! A [`PointSet`] keeps a membership bit per point of the ambient space,
//! indexed by rank, together with the sorted list of member ranks. Every
//! exhaustive loop in the crate walks one of these two views.

mod io;
mod sample;

pub use io::{read_set, read_set_from, write_set, write_set_to, FILE_MAGIC};
pub use sample::{derive_seed, sample, Family, SampleSpec};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{LineRep, Variety, Vector};

/// Largest ambient space `q^d` a point set may live in.
pub const MAX_AMBIENT: u64 = 2_000_000;

/// Validates `(q, d)` and returns `q^d`.
pub fn ambient_size(q: u32, d: usize) -> Result<usize> {
    Field::new(q as u64)?;
    if d == 0 {
        return Err(Error::DimensionTooSmall { needed: 1, d });
    }
    let size = (q as u64)
        .checked_pow(d as u32)
        .filter(|&n| n <= MAX_AMBIENT)
        .ok_or(Error::TooLarge {
            size: (q as u64).saturating_pow(d as u32),
            cap: MAX_AMBIENT,
        })?;
    Ok(size as usize)
}

#[derive(Clone, Debug)]
pub struct PointSet {
    q: u32,
    d: usize,
    members: FixedBitSet,
    ranks: Vec<u32>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.d == other.d && self.ranks == other.ranks
    }
}

impl Eq for PointSet {}

impl PointSet {
    fn from_bits(q: u32, d: usize, members: FixedBitSet) -> Self {
        let ranks = members.ones().map(|r| r as u32).collect();
        PointSet {
            q,
            d,
            members,
            ranks,
        }
    }

    pub fn empty(q: u32, d: usize) -> Result<Self> {
        let n = ambient_size(q, d)?;
        Ok(Self::from_bits(q, d, FixedBitSet::with_capacity(n)))
    }

    pub fn full_space(q: u32, d: usize) -> Result<Self> {
        let n = ambient_size(q, d)?;
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Ok(Self::from_bits(q, d, bits))
    }

    /// Builds a set from ranks; repeated ranks collapse.
    pub fn from_ranks<I: IntoIterator<Item = u64>>(q: u32, d: usize, ranks: I) -> Result<Self> {
        let n = ambient_size(q, d)?;
        let mut bits = FixedBitSet::with_capacity(n);
        for r in ranks {
            if r >= n as u64 {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    bound: n as u64,
                });
            }
            bits.insert(r as usize);
        }
        Ok(Self::from_bits(q, d, bits))
    }

    pub fn from_vectors<'a, I>(q: u32, d: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut ranks = Vec::new();
        for p in points {
            check_point(q, d, p)?;
            ranks.push(p.rank());
        }
        Self::from_ranks(q, d, ranks)
    }

    /// All `x` whose coordinates satisfy `keep`.
    pub fn from_predicate<P>(q: u32, d: usize, mut keep: P) -> Result<Self>
    where
        P: FnMut(&[u32]) -> bool,
    {
        let n = ambient_size(q, d)?;
        let mut bits = FixedBitSet::with_capacity(n);
        let mut coords = vec![0u32; d];
        for r in 0..n {
            if keep(&coords) {
                bits.insert(r);
            }
            // odometer increment, coordinate 0 fastest
            for c in coords.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        Ok(Self::from_bits(q, d, bits))
    }

    /// Exact point set of a variety by exhaustive evaluation.
    pub fn from_variety(v: &Variety) -> Result<Self> {
        Self::from_predicate(v.q(), v.dim(), |x| v.eval_coords(x) == 0)
    }

    pub fn sphere(q: u32, d: usize, j: i64) -> Result<Self> {
        Self::from_variety(&Variety::sphere(q, d, j)?)
    }

    pub fn paraboloid(q: u32, d: usize) -> Result<Self> {
        Self::from_variety(&Variety::paraboloid(q, d)?)
    }

    /// `H = {x ∈ P : x_d = 0}`.
    pub fn paraboloid_base(q: u32, d: usize) -> Result<Self> {
        let p = Variety::paraboloid(q, d)?;
        Self::from_predicate(q, d, |x| x[d - 1] == 0 && p.eval_coords(x) == 0)
    }

    /// Union of the punctured lines `l_x` for the given representatives.
    pub fn line_union(q: u32, d: usize, lines: &[LineRep]) -> Result<Self> {
        let mut ranks = Vec::new();
        for l in lines {
            check_point(q, d, l.rep())?;
            ranks.extend(l.points().map(|p| p.rank()));
        }
        Self::from_ranks(q, d, ranks)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `q^d`.
    pub fn ambient_len(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Member ranks in increasing order.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn contains_rank(&self, rank: u64) -> bool {
        rank < self.members.len() as u64 && self.members.contains(rank as usize)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.q() == self.q && x.dim() == self.d && self.contains_rank(x.rank())
    }

    pub fn contains_origin(&self) -> bool {
        self.contains_rank(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vector> + '_ {
        self.ranks.iter().map(move |&r| self.vector_at(r as u64))
    }

    fn vector_at(&self, rank: u64) -> Vector {
        Vector::unrank(rank, self.q, self.d).expect("member rank within ambient space")
    }

    /// Member coordinates laid out row by row, `d` entries per member.
    pub fn coords_flat(&self) -> Vec<u32> {
        let q = self.q as u64;
        let mut out = Vec::with_capacity(self.len() * self.d);
        for &r in &self.ranks {
            let mut r = r as u64;
            for _ in 0..self.d {
                out.push((r % q) as u32);
                r /= q;
            }
        }
        out
    }

    pub fn same_space(&self, other: &PointSet) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            });
        }
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.same_space(other).is_ok() && self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.same_space(other)?;
        let mut bits = self.members.clone();
        bits.union_with(&other.members);
        Ok(Self::from_bits(self.q, self.d, bits))
    }

    pub fn without_origin(&self) -> PointSet {
        let mut bits = self.members.clone();
        bits.set(0, false);
        Self::from_bits(self.q, self.d, bits)
    }

    pub fn with_origin(&self) -> PointSet {
        let mut bits = self.members.clone();
        bits.insert(0);
        Self::from_bits(self.q, self.d, bits)
    }

    /// `E + a`.
    pub fn translate(&self, a: &Vector) -> Result<PointSet> {
        check_point(self.q, self.d, a)?;
        let ranks: Vec<u64> = self
            .iter()
            .map(|x| x.add(a).map(|y| y.rank()))
            .collect::<Result<_>>()?;
        Self::from_ranks(self.q, self.d, ranks)
    }

    /// Splits `E ⊂ P` into `G = {x_d ≠ 0}` and `B = {x_d = 0}`.
    pub fn paraboloid_split(&self) -> Result<(PointSet, PointSet)> {
        if self.d < 2 {
            return Err(Error::DimensionTooSmall {
                needed: 2,
                d: self.d,
            });
        }
        let p = Variety::paraboloid(self.q, self.d)?;
        let n = self.ambient_len();
        let mut good = FixedBitSet::with_capacity(n);
        let mut base = FixedBitSet::with_capacity(n);
        let coords = self.coords_flat();
        for (x, &r) in coords.chunks_exact(self.d).zip(&self.ranks) {
            if p.eval_coords(x) != 0 {
                return Err(Error::NotOnParaboloid);
            }
            if x[self.d - 1] != 0 {
                good.insert(r as usize);
            } else {
                base.insert(r as usize);
            }
        }
        Ok((
            Self::from_bits(self.q, self.d, good),
            Self::from_bits(self.q, self.d, base),
        ))
    }

    /// Image under `π(x) = (x_1, …, x_{d−1})`, as a set in `F_q^{d−1}`.
    pub fn project(&self) -> Result<PointSet> {
        if self.d < 2 {
            return Err(Error::DimensionTooSmall {
                needed: 2,
                d: self.d,
            });
        }
        // Dropping the most significant coordinate is a reduction mod q^{d-1}.
        let m = (self.q as u64).pow(self.d as u32 - 1);
        Self::from_ranks(self.q, self.d - 1, self.ranks.iter().map(|&r| r as u64 % m))
    }
}

fn check_point(q: u32, d: usize, p: &Vector) -> Result<()> {
    if p.q() != q {
        return Err(Error::FieldMismatch {
            left: q,
            right: p.q(),
        });
    }
    if p.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(q: u32, rows: &[&[u32]]) -> PointSet {
        let vs: Vec<Vector> = rows
            .iter()
            .map(|c| Vector::new(q, c.to_vec()).unwrap())
            .collect();
        PointSet::from_vectors(q, rows[0].len(), &vs).unwrap()
    }

    fn v(q: u32, c: &[u32]) -> Vector {
        Vector::new(q, c.to_vec()).unwrap()
    }

    #[test]
    fn paraboloid_f3() {
        let p = PointSet::paraboloid(3, 2).unwrap();
        assert_eq!(p, pts(3, &[&[0, 0], &[1, 1], &[2, 1]]));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn spheres_f3() {
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        assert_eq!(s1, pts(3, &[&[0, 1], &[0, 2], &[1, 0], &[2, 0]]));
        let s0 = PointSet::sphere(3, 2, 0).unwrap();
        assert_eq!(s0, pts(3, &[&[0, 0]]));
    }

    #[test]
    fn paraboloid_size_and_origin() {
        for q in crate::field::odd_primes_up_to(13) {
            for d in 2..=4usize {
                if (q as u64).pow(d as u32) > 30_000 {
                    continue;
                }
                let p = PointSet::paraboloid(q, d).unwrap();
                assert_eq!(p.len() as u64, (q as u64).pow(d as u32 - 1));
                assert!(p.contains_origin());
                for j in 1..q as i64 {
                    assert!(!PointSet::sphere(q, d, j).unwrap().contains_origin());
                }
            }
        }
    }

    #[test]
    fn translate_examples() {
        let p = PointSet::paraboloid(3, 2).unwrap();
        let shifted = p.translate(&v(3, &[0, 1])).unwrap();
        assert_eq!(shifted, pts(3, &[&[0, 1], &[1, 2], &[2, 2]]));
        assert_eq!(p.translate(&Vector::zero(3, 2)).unwrap(), p);
        let a = v(3, &[2, 1]);
        assert_eq!(p.translate(&a).unwrap().translate(&a.neg()).unwrap(), p);
        assert!(matches!(
            p.translate(&v(3, &[1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let p = PointSet::paraboloid(3, 2).unwrap();
        let (g, b) = p.paraboloid_split().unwrap();
        assert_eq!(g, pts(3, &[&[1, 1], &[2, 1]]));
        assert_eq!(b, pts(3, &[&[0, 0]]));
        let origin = pts(3, &[&[0, 0]]);
        let (g, b) = origin.paraboloid_split().unwrap();
        assert!(g.is_empty());
        assert_eq!(b, origin);
        let s1 = PointSet::sphere(3, 2, 1).unwrap();
        assert!(matches!(s1.paraboloid_split(), Err(Error::NotOnParaboloid)));
    }

    #[test]
    fn projection_image() {
        let e = pts(3, &[&[1, 2, 0], &[1, 2, 1], &[0, 0, 2]]);
        let pe = e.project().unwrap();
        assert_eq!(pe, pts(3, &[&[1, 2], &[0, 0]]));
        let b = PointSet::paraboloid_base(5, 3).unwrap();
        // x_d = 0 on H, so the projection is injective there
        assert_eq!(b.project().unwrap().len(), b.len());
    }

    #[test]
    fn paraboloid_base_is_line_union_when_minus_one_is_square() {
        // q = 5: −1 = 2², so x_1² + x_2² = 0 splits into x_2 = ±2x_1.
        let h = PointSet::paraboloid_base(5, 3).unwrap();
        let lines = [
            v(5, &[1, 2, 0]).line_rep().unwrap(),
            v(5, &[1, 3, 0]).line_rep().unwrap(),
        ];
        let union = PointSet::line_union(5, 3, &lines).unwrap();
        assert_eq!(h.without_origin(), union);
        // q = 3: −1 is not a square, H is just the origin.
        assert_eq!(PointSet::paraboloid_base(3, 3).unwrap().len(), 1);
    }

    #[test]
    fn caps_and_bad_moduli() {
        assert!(matches!(
            PointSet::empty(4, 2),
            Err(Error::UnsupportedModulus { .. })
        ));
        assert!(matches!(
            PointSet::empty(101, 4),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(PointSet::full_space(5, 2).unwrap().len(), 25);
    }
}
