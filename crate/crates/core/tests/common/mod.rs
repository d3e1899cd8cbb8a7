//! Brute-force reference implementations used to cross-check the library.
//! Everything here works on plain coordinate vectors and uses its own
//! arithmetic, so a bug in the library cannot hide in both places.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;

use ffdot::PointSet;

pub type Pt = Vec<u32>;

pub fn points(set: &PointSet) -> Vec<Pt> {
    set.iter().map(|v| v.coords().to_vec()).collect()
}

pub fn rank(x: &[u32], q: u32) -> usize {
    x.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * q as usize + c as usize)
}

pub fn unrank(mut r: usize, q: u32, d: usize) -> Pt {
    (0..d)
        .map(|_| {
            let c = (r % q as usize) as u32;
            r /= q as usize;
            c
        })
        .collect()
}

pub fn all_points(q: u32, d: usize) -> Vec<Pt> {
    (0..(q as usize).pow(d as u32))
        .map(|r| unrank(r, q, d))
        .collect()
}

pub fn dot(x: &[u32], y: &[u32], q: u32) -> u32 {
    (x.iter()
        .zip(y)
        .map(|(&a, &b)| a as u64 * b as u64)
        .sum::<u64>()
        % q as u64) as u32
}

pub fn norm(x: &[u32], q: u32) -> u32 {
    dot(x, x, q)
}

pub fn sub(x: &[u32], y: &[u32], q: u32) -> Pt {
    x.iter().zip(y).map(|(&a, &b)| (a + q - b) % q).collect()
}

pub fn scale(x: &[u32], s: u32, q: u32) -> Pt {
    x.iter()
        .map(|&a| (a as u64 * s as u64 % q as u64) as u32)
        .collect()
}

/// `ν(t)` for `t = 0..q`.
pub fn nu(e: &[Pt], f: &[Pt], q: u32) -> Vec<u64> {
    let mut out = vec![0u64; q as usize];
    for x in e {
        for y in f {
            out[dot(x, y, q) as usize] += 1;
        }
    }
    out
}

pub fn products(e: &[Pt], f: &[Pt], q: u32) -> BTreeSet<u32> {
    e.iter()
        .flat_map(|x| f.iter().map(move |y| dot(x, y, q)))
        .collect()
}

pub fn distances(e: &[Pt], f: &[Pt], q: u32) -> BTreeSet<u32> {
    e.iter()
        .flat_map(|x| f.iter().map(move |y| norm(&sub(x, y, q), q)))
        .collect()
}

/// `q^{-d} Σ_x E(x) exp(−2πi x·m/q)` with the exponential taken from libm.
pub fn naive_dft(e: &[Pt], q: u32, d: usize) -> Vec<(f64, f64)> {
    let n = (q as usize).pow(d as u32);
    (0..n)
        .map(|r| {
            let m = unrank(r, q, d);
            let (mut re, mut im) = (0.0, 0.0);
            for x in e {
                let theta = -2.0 * PI * dot(x, &m, q) as f64 / q as f64;
                re += theta.cos();
                im += theta.sin();
            }
            (re / n as f64, im / n as f64)
        })
        .collect()
}

/// `Σ_{x≠0} Σ_{s≠0} E(sx) |F̂(x)|²`, straight from the definition.
pub fn energy(e: &[Pt], f: &[Pt], q: u32, d: usize) -> f64 {
    let fhat = naive_dft(f, q, d);
    let members: BTreeSet<usize> = e.iter().map(|x| rank(x, q)).collect();
    let mut total = 0.0;
    for (r, &(re, im)) in fhat.iter().enumerate().skip(1) {
        let x = unrank(r, q, d);
        let hits = (1..q)
            .filter(|&s| members.contains(&rank(&scale(&x, s, q), q)))
            .count();
        total += hits as f64 * (re * re + im * im);
    }
    total
}

/// Largest number of points of `e` on one punctured line through the origin.
pub fn max_line_count(e: &[Pt], q: u32) -> u32 {
    let mut counts: HashMap<Pt, u32> = HashMap::new();
    for x in e {
        let Some(&lead) = x.iter().find(|&&c| c != 0) else {
            continue;
        };
        let inv = (1..q)
            .find(|&s| s as u64 * lead as u64 % q as u64 == 1)
            .unwrap();
        *counts.entry(scale(x, inv, q)).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// `max_{m≠0} |Ê(m)| q^d / √|E|`.
pub fn salem(e: &[Pt], q: u32, d: usize) -> f64 {
    let hat = naive_dft(e, q, d);
    let n = hat.len() as f64;
    let peak = hat[1..]
        .iter()
        .map(|&(a, b)| (a * a + b * b).sqrt())
        .fold(0.0, f64::max);
    peak * n / (e.len() as f64).sqrt()
}
