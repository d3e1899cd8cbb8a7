//! Vectors of `F_q^d`, lines through the origin, and diagonal quadratic
//! varieties.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{inv_mod, reduce};

/// A point of `F_q^d`. Coordinates are always reduced into `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    q: u32,
    coords: Vec<u32>,
}

impl Vector {
    pub fn new(q: u32, coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall { needed: 1, d: 0 });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::CoordinateOutOfRange {
                value: bad as i64,
                q,
            });
        }
        Ok(Vector { q, coords })
    }

    /// Builds a vector from arbitrary integers, reducing each mod `q`.
    pub fn from_signed(q: u32, coords: &[i64]) -> Result<Self> {
        Vector::new(q, coords.iter().map(|&c| reduce(c, q)).collect())
    }

    pub fn zero(q: u32, d: usize) -> Self {
        Vector {
            q,
            coords: vec![0; d],
        }
    }

    /// Inverse of [`Vector::rank`].
    pub fn unrank(rank: u64, q: u32, d: usize) -> Result<Self> {
        let bound = (q as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if rank >= bound {
            return Err(Error::RankOutOfRange { rank, bound });
        }
        let mut coords = Vec::with_capacity(d);
        let mut r = rank;
        for _ in 0..d {
            coords.push((r % q as u64) as u32);
            r /= q as u64;
        }
        Ok(Vector { q, coords })
    }

    /// `Σ coords[i] · q^i`.
    pub fn rank(&self) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: other.q,
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(dot_coords(&self.coords, &other.coords, self.q))
    }

    /// `x_1² + … + x_d²`.
    pub fn norm(&self) -> u32 {
        dot_coords(&self.coords, &self.coords, self.q)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let q = self.q;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        Ok(Vector { q, coords })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Vector {
        let q = self.q;
        Vector {
            q,
            coords: self.coords.iter().map(|&c| (q - c) % q).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Vector {
        let q = self.q as u64;
        Vector {
            q: self.q,
            coords: self
                .coords
                .iter()
                .map(|&c| (c as u64 * s as u64 % q) as u32)
                .collect(),
        }
    }

    /// Canonical representative of the punctured line `{sx : s ≠ 0}`.
    pub fn line_rep(&self) -> Result<LineRep> {
        let lead = *self
            .coords
            .iter()
            .find(|&&c| c != 0)
            .ok_or(Error::ZeroVector)?;
        Ok(LineRep(self.scale(inv_mod(lead, self.q)?)))
    }

    /// Drops the last coordinate.
    pub fn project(&self) -> Result<Vector> {
        if self.dim() < 2 {
            return Err(Error::DimensionTooSmall {
                needed: 2,
                d: self.dim(),
            });
        }
        Ok(Vector {
            q: self.q,
            coords: self.coords[..self.dim() - 1].to_vec(),
        })
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dot product of two coordinate slices, reduced mod `q`. Callers guarantee
/// equal length.
#[inline]
pub fn dot_coords(x: &[u32], y: &[u32], q: u32) -> u32 {
    let s: u64 = x.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64).sum();
    (s % q as u64) as u32
}

/// A line through the origin, stored by its representative whose first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineRep(Vector);

impl LineRep {
    /// Accepts `v` only if it is already canonical.
    pub fn from_canonical(v: Vector) -> Result<Self> {
        let rep = v.line_rep()?;
        if rep.0 != v {
            return Err(Error::Parse(format!(
                "{v} is not a canonical line representative"
            )));
        }
        Ok(rep)
    }

    pub fn rep(&self) -> &Vector {
        &self.0
    }

    pub fn rank(&self) -> u64 {
        self.0.rank()
    }

    /// The `q − 1` points `s · rep`, `s ∈ F_q^*`.
    pub fn points(&self) -> impl Iterator<Item = Vector> + '_ {
        (1..self.0.q).map(move |s| self.0.scale(s))
    }
}

impl fmt::Display for LineRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

/// All `(q^d − 1)/(q − 1)` lines through the origin in rank order of their
/// representatives.
pub fn enumerate_lines(q: u32, d: usize) -> Vec<LineRep> {
    let mut lines = Vec::new();
    let mut coords = vec![0u32; d];
    // Leading 1 at position `lead`, zeros before it, anything after.
    for lead in (0..d).rev() {
        let free = d - lead - 1;
        let count = (q as u64).pow(free as u32);
        for r in 0..count {
            coords.iter_mut().for_each(|c| *c = 0);
            coords[lead] = 1;
            let mut r = r;
            for c in coords[lead + 1..].iter_mut() {
                *c = (r % q as u64) as u32;
                r /= q as u64;
            }
            lines.push(LineRep(Vector {
                q,
                coords: coords.clone(),
            }));
        }
    }
    lines.sort_by_key(LineRep::rank);
    lines
}

/// `V = {x : Σ a_i x_i² + Σ b_i x_i + c = 0}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    q: u32,
    a: Vec<u32>,
    b: Vec<u32>,
    c: u32,
}

impl Variety {
    pub fn new(q: u32, a: &[i64], b: &[i64], c: i64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::DimensionTooSmall { needed: 1, d: 0 });
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(Variety {
            q,
            a: a.iter().map(|&v| reduce(v, q)).collect(),
            b: b.iter().map(|&v| reduce(v, q)).collect(),
            c: reduce(c, q),
        })
    }

    /// `S_j = {x : ‖x‖ = j}`.
    pub fn sphere(q: u32, d: usize, j: i64) -> Result<Self> {
        Variety::new(q, &vec![1; d], &vec![0; d], -j)
    }

    /// `P = {x : x_1² + … + x_{d−1}² = x_d}`.
    pub fn paraboloid(q: u32, d: usize) -> Result<Self> {
        Self::paraboloid_with_sign(q, d, -1)
    }

    /// `P̄ = {x : x_1² + … + x_{d−1}² = −x_d}`.
    pub fn conjugate_paraboloid(q: u32, d: usize) -> Result<Self> {
        Self::paraboloid_with_sign(q, d, 1)
    }

    fn paraboloid_with_sign(q: u32, d: usize, sign: i64) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { needed: 2, d });
        }
        let mut a = vec![1; d];
        a[d - 1] = 0;
        let mut b = vec![0; d];
        b[d - 1] = sign;
        Variety::new(q, &a, &b, 0)
    }

    /// `V + t = {x + t : x ∈ V}`, which stays a diagonal quadratic.
    pub fn translate(&self, t: &Vector) -> Result<Variety> {
        if t.q() != self.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: t.q(),
            });
        }
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: t.dim(),
            });
        }
        // Q(x − t) = Σ a_i x_i² + Σ (b_i − 2 a_i t_i) x_i + (Σ a_i t_i² − Σ b_i t_i + c)
        let q = self.q as i64;
        let mut b = Vec::with_capacity(self.dim());
        let mut c = self.c as i64;
        for ((&ai, &bi), &ti) in self.a.iter().zip(&self.b).zip(t.coords()) {
            let (ai, bi, ti) = (ai as i64, bi as i64, ti as i64);
            b.push((bi - 2 * ai * ti).rem_euclid(q));
            c = (c + ai * ti % q * ti - bi * ti).rem_euclid(q);
        }
        let a: Vec<i64> = self.a.iter().map(|&v| v as i64).collect();
        Variety::new(self.q, &a, &b, c)
    }

    /// Parses `a1,…,ad;b1,…,bd;c`.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "variety `{text}` must have the form a1,..,ad;b1,..,bd;c"
            )));
        }
        let a = parse_int_list(parts[0])?;
        let b = parse_int_list(parts[1])?;
        let c = parts[2]
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("constant `{}`: {e}", parts[2])))?;
        Variety::new(q, &a, &b, c)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `Q(x) mod q` for a coordinate slice of matching length.
    pub fn eval_coords(&self, x: &[u32]) -> u32 {
        let q = self.q as u64;
        let mut acc = self.c as u64;
        for ((&ai, &bi), &xi) in self.a.iter().zip(&self.b).zip(x) {
            let xi = xi as u64;
            acc += (ai as u64 * (xi * xi % q) + bi as u64 * xi) % q;
        }
        (acc % q) as u32
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        if x.q() != self.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: x.q(),
            });
        }
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self.eval_coords(x.coords()) == 0)
    }

    pub fn contains_origin(&self) -> bool {
        self.c == 0
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{};{}", join(&self.a), join(&self.b), self.c)
    }
}

/// Parses a comma-separated list of integers such as `1,-2,0`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("integer `{}`: {e}", t.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(q: u32, c: &[u32]) -> Vector {
        Vector::new(q, c.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(v(3, &[1, 2]).rank(), 7);
        assert_eq!(Vector::unrank(0, 3, 2).unwrap(), v(3, &[0, 0]));
        assert_eq!(v(5, &[4, 4, 4]).rank(), 124);
        assert!(matches!(
            Vector::unrank(9, 3, 2),
            Err(Error::RankOutOfRange { rank: 9, bound: 9 })
        ));
    }

    #[test]
    fn dot_and_norm_examples() {
        assert_eq!(v(3, &[1, 0]).dot(&v(3, &[0, 1])).unwrap(), 0);
        assert_eq!(v(5, &[2, 3]).dot(&v(5, &[4, 1])).unwrap(), 1);
        let x = v(7, &[1, 2, 3]);
        assert_eq!(x.dot(&x).unwrap(), 0);
        assert!(matches!(
            v(3, &[1, 0]).dot(&v(3, &[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(v(3, &[1, 1]).norm(), 2);
        assert_eq!(v(5, &[0, 0]).norm(), 0);
        assert_eq!(v(7, &[2, 2, 3]).norm(), 3);
    }

    #[test]
    fn line_rep_examples() {
        assert_eq!(v(5, &[2, 4]).line_rep().unwrap().rep(), &v(5, &[1, 2]));
        assert_eq!(v(3, &[0, 2]).line_rep().unwrap().rep(), &v(3, &[0, 1]));
        assert_eq!(
            v(7, &[3, 3, 3]).line_rep().unwrap().rep(),
            &v(7, &[1, 1, 1])
        );
        assert!(matches!(v(5, &[0, 0]).line_rep(), Err(Error::ZeroVector)));
    }

    #[test]
    fn line_enumeration() {
        let lines = enumerate_lines(3, 2);
        let reps: Vec<_> = lines.iter().map(|l| l.rep().coords().to_vec()).collect();
        assert_eq!(lines.len(), 4);
        for want in [[0, 1], [1, 0], [1, 1], [1, 2]] {
            assert!(reps.contains(&want.to_vec()));
        }
        assert_eq!(enumerate_lines(5, 3).len(), 31);
        for l in enumerate_lines(7, 3) {
            assert_eq!(l.rep().line_rep().unwrap(), l);
        }
    }

    #[test]
    fn lines_partition_punctured_space() {
        for q in [3u32, 5, 7] {
            for d in 1..=3usize {
                let n = (q as u64).pow(d as u32);
                let lines = enumerate_lines(q, d);
                assert_eq!(lines.len() as u64, (n - 1) / (q as u64 - 1));
                let mut seen = vec![false; n as usize];
                for l in &lines {
                    let pts: Vec<_> = l.points().collect();
                    assert_eq!(pts.len() as u32, q - 1);
                    for p in pts {
                        assert_eq!(&p.line_rep().unwrap(), l);
                        let r = p.rank() as usize;
                        assert!(!seen[r], "point {p} on two lines");
                        seen[r] = true;
                    }
                }
                assert!(!seen[0]);
                assert!(seen[1..].iter().all(|&s| s));
            }
        }
    }

    #[test]
    fn projection() {
        assert_eq!(v(3, &[1, 2, 0]).project().unwrap(), v(3, &[1, 2]));
        assert_eq!(v(5, &[0, 0]).project().unwrap(), v(5, &[0]));
        assert_eq!(v(7, &[3, 1, 4, 2]).project().unwrap(), v(7, &[3, 1, 4]));
        assert!(matches!(
            v(7, &[3]).project(),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn variety_examples() {
        let p = Variety::paraboloid(3, 2).unwrap();
        assert_eq!(p, Variety::new(3, &[1, 0], &[0, -1], 0).unwrap());
        assert!(p.contains(&v(3, &[2, 1])).unwrap());
        let s1 = Variety::sphere(3, 2, 1).unwrap();
        assert!(!s1.contains(&v(3, &[1, 1])).unwrap());
        let pbar = Variety::conjugate_paraboloid(3, 2).unwrap();
        assert!(pbar.contains(&v(3, &[1, 2])).unwrap());
        assert!(matches!(
            p.contains(&v(3, &[1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn conjugate_paraboloid_by_exhaustion() {
        // x_1² = −x_2 over F_3: x_1 ∈ {0,1,2} gives x_2 ∈ {0,2,2}.
        let pbar = Variety::conjugate_paraboloid(3, 2).unwrap();
        let members: Vec<u64> = (0..9)
            .filter(|&r| pbar.contains(&Vector::unrank(r, 3, 2).unwrap()).unwrap())
            .collect();
        let expected: Vec<u64> = [[0, 0], [1, 2], [2, 2]]
            .iter()
            .map(|c| v(3, c).rank())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(members, expected);
    }

    #[test]
    fn variety_parse_and_display() {
        let s = Variety::parse("1,1;0,0;-1", 3).unwrap();
        assert_eq!(s, Variety::sphere(3, 2, 1).unwrap());
        assert_eq!(s.to_string(), "1,1;0,0;2");
        assert_eq!(Variety::parse(&s.to_string(), 3).unwrap(), s);
        assert!(Variety::parse("1,1;0;1", 3).is_err());
        assert!(Variety::parse("1,1;0,0", 3).is_err());
        assert!(Variety::parse("1,x;0,0;1", 3).is_err());
    }

    #[test]
    fn translated_paraboloid_matches_shifted_points() {
        let q = 5;
        let p = Variety::paraboloid(q, 3).unwrap();
        let a = v(q, &[1, 3, 2]);
        let pa = p.translate(&a).unwrap();
        for r in 0..125 {
            let x = Vector::unrank(r, q, 3).unwrap();
            assert_eq!(
                pa.contains(&x).unwrap(),
                p.contains(&x.sub(&a).unwrap()).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(q in prop::sample::select(vec![3u32, 5, 7, 11, 13]), d in 1usize..5, seed in any::<u64>()) {
            let n = (q as u64).pow(d as u32);
            let r = seed % n;
            let x = Vector::unrank(r, q, d).unwrap();
            prop_assert_eq!(x.rank(), r);
        }

        #[test]
        fn polarization(q in prop::sample::select(vec![3u32, 5, 7, 11, 13]), xs in prop::collection::vec(0i64..100, 1..5), ys in prop::collection::vec(0i64..100, 1..5)) {
            let d = xs.len().min(ys.len());
            let x = Vector::from_signed(q, &xs[..d]).unwrap();
            let y = Vector::from_signed(q, &ys[..d]).unwrap();
            let lhs = x.sub(&y).unwrap().norm() as i64;
            let rhs = (x.norm() as i64 + y.norm() as i64 - 2 * x.dot(&y).unwrap() as i64).rem_euclid(q as i64);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn line_rep_is_scale_invariant(q in prop::sample::select(vec![3u32, 5, 7, 11, 13]), xs in prop::collection::vec(0i64..100, 1..5), s in 1u32..1000) {
            let x = Vector::from_signed(q, &xs).unwrap();
            prop_assume!(!x.is_zero() && s % q != 0);
            let rep = x.line_rep().unwrap();
            prop_assert_eq!(x.scale(s).line_rep().unwrap(), rep.clone());
            let lead = rep.rep().coords().iter().find(|&&c| c != 0).copied();
            prop_assert_eq!(lead, Some(1));
        }
    }
}
