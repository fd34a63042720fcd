#![allow(dead_code)]

use histopol_core::geometry::min_separation;
use histopol_core::{translated_supports, Point2, SupportSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` random centers in the disc of radius `reach`, at least `min_sep` apart.
pub fn random_centers(rng: &mut impl Rng, n: usize, reach: f64, min_sep: f64) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point2::new(rng.random_range(-reach..reach), rng.random_range(-reach..reach));
        if p.norm() < reach && pts.iter().all(|q| q.dist(p) >= min_sep) {
            pts.push(p);
        }
    }
    pts
}

/// Random pairwise disjoint equal discs, radius 0.4 times the minimal separation.
pub fn random_disjoint_set(rng: &mut impl Rng, n: usize) -> SupportSet {
    let centers = random_centers(rng, n, 0.9, 0.02);
    let sep = min_separation(&centers).unwrap_or(0.5);
    let r = (0.4 * sep).min(0.1);
    translated_supports(&centers, r).unwrap()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
