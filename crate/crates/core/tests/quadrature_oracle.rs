mod common;

use std::f64::consts::PI;

use histopol_core::quadrature::default_data_exactness;
use histopol_core::{disc_rule, integrate, Point2};
use rand::Rng;

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// `∫_{B(0,r)} u^i v^j`: zero unless both exponents are even, else
/// `r^{i+j+2} · 2π (i-1)!! (j-1)!! / ((i+j)!! (i+j+2))`.
fn centered_moment(i: u32, j: u32, r: f64) -> f64 {
    if i % 2 == 1 || j % 2 == 1 {
        return 0.0;
    }
    let (i, j) = (i64::from(i), i64::from(j));
    let angular = 2.0 * PI * double_factorial(i - 1) * double_factorial(j - 1) / double_factorial(i + j);
    r.powi((i + j + 2) as i32) * angular / (i + j + 2) as f64
}

/// `∫_{B(c,r)} x^a y^b` by binomial expansion about the center.
fn disc_moment(a: u32, b: u32, c: Point2, r: f64) -> f64 {
    let mut total = 0.0;
    for i in 0..=a {
        for j in 0..=b {
            total += binom(a, i)
                * binom(b, j)
                * c.x.powi((a - i) as i32)
                * c.y.powi((b - j) as i32)
                * centered_moment(i, j, r);
        }
    }
    total
}

fn random_discs(seed: u64) -> Vec<(Point2, f64)> {
    let mut rng = common::rng(seed);
    (0..20)
        .map(|_| {
            let rho: f64 = rng.random_range(0.0..0.9);
            let t: f64 = rng.random_range(0.0..2.0 * PI);
            let r = rng.random_range(0.01..(1.0 - rho));
            (Point2::new(rho * t.cos(), rho * t.sin()), r)
        })
        .collect()
}

#[test]
fn oracle_self_check() {
    assert!((centered_moment(0, 0, 1.0) - PI).abs() < 1e-15);
    assert!((centered_moment(2, 0, 1.0) - PI / 4.0).abs() < 1e-15);
    assert!((centered_moment(2, 2, 1.0) - PI / 24.0).abs() < 1e-15);
    assert!((disc_moment(1, 0, Point2::new(0.3, 0.0), 0.2) - 0.3 * PI * 0.04).abs() < 1e-16);
}

#[test]
fn monomials_match_closed_form_on_random_discs() {
    for (c, r) in random_discs(7) {
        let rule = disc_rule(c, r, 12);
        for deg in 0..=12u32 {
            for a in 0..=deg {
                let b = deg - a;
                let exact = disc_moment(a, b, c, r);
                let q = integrate(&rule, |p| p.x.powi(a as i32) * p.y.powi(b as i32)).unwrap();
                let scale = PI * r * r * (c.x.abs() + r).powi(a as i32) * (c.y.abs() + r).powi(b as i32);
                let err = (q - exact).abs() / exact.abs().max(scale);
                assert!(err <= 1e-12, "x^{a} y^{b} on B({:?}, {r}): {q} vs {exact}", c);
            }
        }
    }
}

#[test]
fn over_integration_is_stable() {
    for (c, r) in random_discs(11).into_iter().take(5) {
        for deg in [0usize, 3, 6, 9] {
            let f = |p: Point2| p.x.powi(deg as i32) - 0.5 * p.y.powi(deg.saturating_sub(1) as i32) + p.x * p.y;
            let need = deg.max(2);
            let base = integrate(&disc_rule(c, r, need), f).unwrap();
            for extra in [1usize, 5, 17, default_data_exactness(deg)] {
                let more = integrate(&disc_rule(c, r, need + extra), f).unwrap();
                assert!((more - base).abs() <= 1e-12 * base.abs().max(PI * r * r), "deg={deg} extra={extra}");
            }
        }
    }
}
