//! Polar product quadrature on discs.
//!
//! A rule of exactness `D` on `B(c, r)` uses `⌈(D+2)/2⌉` Gauss–Legendre
//! radial nodes on `[0, 1]` (the Jacobian `ρ` is folded into the weights)
//! and `D + 1` equispaced angles. In polar coordinates about `c`, a total
//! degree `D` polynomial is `ρ·(poly of degree ≤ D+1 in ρ)` times a
//! trigonometric polynomial of degree ≤ D, and both factors are integrated
//! exactly.

use std::f64::consts::PI;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::geometry::{DiscSupport, Point2};

/// Exactness used for data integrals of non-polynomial integrands.
pub fn default_data_exactness(degree: usize) -> usize {
    2 * degree + 20
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and weights on a disc, exact up to `exactness_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<Point2>,
    weights: Vec<f64>,
    exactness_degree: usize,
}

impl QuadRule {
    /// Rule on the unit disc centered at the origin.
    pub fn unit(degree: usize) -> Self {
        let radial = (degree + 2).div_ceil(2);
        let angular = degree + 1;
        let (gx, gw) = gauss_legendre(radial);
        let dtheta = 2.0 * PI / angular as f64;
        let mut nodes = Vec::with_capacity(radial * angular);
        let mut weights = Vec::with_capacity(radial * angular);
        for (x, w) in gx.iter().zip(&gw) {
            let rho = 0.5 * (x + 1.0);
            let wr = 0.5 * w * rho * dtheta;
            for k in 0..angular {
                let (s, c) = (k as f64 * dtheta).sin_cos();
                nodes.push(Point2::new(rho * c, rho * s));
                weights.push(wr);
            }
        }
        Self { nodes, weights, exactness_degree: degree }
    }

    /// This rule (assumed to live on the unit disc) moved to `B(center, radius)`.
    pub fn mapped(&self, center: Point2, radius: f64) -> Self {
        let r2 = radius * radius;
        Self {
            nodes: self.nodes.iter().map(|p| Point2::new(center.x + radius * p.x, center.y + radius * p.y)).collect(),
            weights: self.weights.iter().map(|w| w * r2).collect(),
            exactness_degree: self.exactness_degree,
        }
    }

    pub fn nodes(&self) -> &[Point2] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exactness_degree(&self) -> usize {
        self.exactness_degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn disc_rule(center: Point2, radius: f64, degree: usize) -> QuadRule {
    QuadRule::unit(degree).mapped(center, radius)
}

/// `Σ w_k f(x_k)`; a non-finite sample is reported as an error.
pub fn integrate<F: Fn(Point2) -> f64>(rule: &QuadRule, f: F) -> Result<f64> {
    let mut acc = 0.0;
    for (&p, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(p);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("integrand is {v} at ({}, {})", p.x, p.y)));
        }
        acc += w * v;
    }
    Ok(acc)
}

/// `(∫_K p_j)_j` using `unit` (a unit-disc rule of sufficient exactness)
/// mapped onto the support. `scratch` must have length `spec.len()`.
pub(crate) fn basis_integrals_with(
    support: &DiscSupport,
    spec: &BasisSpec,
    unit: &QuadRule,
    out: &mut [f64],
    scratch: &mut [f64],
) {
    let c = support.center();
    let r = support.radius();
    let r2 = r * r;
    out.iter_mut().for_each(|o| *o = 0.0);
    for (p, &w) in unit.nodes.iter().zip(&unit.weights) {
        spec.eval_into(Point2::new(c.x + r * p.x, c.y + r * p.y), scratch);
        let w = w * r2;
        for (o, v) in out.iter_mut().zip(scratch.iter()) {
            *o += w * v;
        }
    }
}

/// Row vector of basis integrals over a disc, exact for the basis degree.
pub fn integrate_basis(support: &DiscSupport, spec: &BasisSpec) -> Vec<f64> {
    let unit = QuadRule::unit(spec.degree());
    let mut out = vec![0.0; spec.len()];
    let mut scratch = vec![0.0; spec.len()];
    basis_integrals_with(support, spec, &unit, &mut out, &mut scratch);
    out
}
