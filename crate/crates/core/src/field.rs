//! Prime field arithmetic and the additive character `u ↦ exp(2πiu/q)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest modulus accepted. Every `F_q^d` this crate touches is capped far
/// below this anyway; the bound keeps `u32` products from overflowing `u64`.
pub const MAX_MODULUS: u32 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Odd primes in `3..=max`.
pub fn odd_primes_up_to(max: u32) -> Vec<u32> {
    (3..=max).filter(|&n| is_prime(n as u64)).collect()
}

/// Multiplicative inverse mod a prime `q`, via Fermat.
pub fn inv_mod(a: u32, q: u32) -> Result<u32> {
    let a = a % q;
    if a == 0 {
        return Err(Error::DivisionByZero { q });
    }
    Ok(pow_mod(a, q - 2, q))
}

pub fn pow_mod(base: u32, mut exp: u32, q: u32) -> u32 {
    let q = q as u64;
    let mut base = base as u64 % q;
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc as u32
}

/// Reduce a signed integer into `[0, q)`.
pub fn reduce(value: i64, q: u32) -> u32 {
    value.rem_euclid(q as i64) as u32
}

/// The prime field `F_q`, `q` odd, with a precomputed table of `q`-th roots
/// of unity. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    roots: Vec<Complex64>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 {
            return Err(Error::UnsupportedModulus {
                q,
                reason: "characteristic must be an odd prime (q >= 3)",
            });
        }
        if q.is_multiple_of(2) {
            return Err(Error::UnsupportedModulus {
                q,
                reason: "even characteristic is not supported",
            });
        }
        if q > MAX_MODULUS as u64 {
            return Err(Error::UnsupportedModulus {
                q,
                reason: "modulus too large",
            });
        }
        if !is_prime(q) {
            return Err(Error::UnsupportedModulus {
                q,
                reason: "modulus is not prime",
            });
        }
        let q = q as u32;
        let roots = (0..q)
            .map(|u| {
                if u == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, TAU * u as f64 / q as f64)
                }
            })
            .collect();
        Ok(Field { q, roots })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - (b % self.q) as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a % self.q) % self.q
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        inv_mod(a, self.q)
    }

    #[inline]
    pub fn reduce(&self, value: i64) -> u32 {
        reduce(value, self.q)
    }

    /// `ψ(u) = exp(2πiu/q)`; `u` is reduced mod `q`.
    #[inline]
    pub fn character(&self, u: u64) -> Complex64 {
        self.roots[(u % self.q as u64) as usize]
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        for q in [0, 1, 2, 4, 9, 15, 21] {
            assert!(Field::new(q).is_err(), "q={q} accepted");
        }
        assert!(matches!(
            Field::new(2),
            Err(Error::UnsupportedModulus { q: 2, .. })
        ));
    }

    #[test]
    fn q3_roots() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.character(0), Complex64::new(1.0, 0.0));
        let w = f.character(1);
        assert!((w.re + 0.5).abs() < 1e-15);
        assert!((w.im - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let w2 = f.character(2);
        assert!((w2 - w * w).norm() < 1e-15);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 7).unwrap(), 5);
        assert_eq!(inv_mod(1, 5).unwrap(), 1);
        assert_eq!(inv_mod(2, 13).unwrap(), 7);
        assert!(matches!(inv_mod(0, 7), Err(Error::DivisionByZero { q: 7 })));
        for q in odd_primes_up_to(101) {
            let f = Field::new(q as u64).unwrap();
            for a in 1..q {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), 1);
                assert_eq!(f.inv(b).unwrap(), a);
            }
        }
    }

    #[test]
    fn orthogonality_and_unit_modulus() {
        for q in odd_primes_up_to(101) {
            let f = Field::new(q as u64).unwrap();
            let total: Complex64 = f.roots().iter().sum();
            assert!(total.norm() <= 1e-9 * q as f64);
            for r in f.roots() {
                assert!((r.norm() - 1.0).abs() <= 1e-12);
            }
            for t in 0..q {
                let s: Complex64 = (0..q).map(|u| f.character(u as u64 * t as u64)).sum();
                let expected = if t == 0 { q as f64 } else { 0.0 };
                assert!((s - expected).norm() <= 1e-9 * q as f64, "q={q} t={t}");
            }
        }
    }

    #[test]
    fn arithmetic_helpers() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.neg(3), 4);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(pow_mod(3, 6, 7), 1);
        assert_eq!(odd_primes_up_to(13), vec![3, 5, 7, 11, 13]);
    }
}
