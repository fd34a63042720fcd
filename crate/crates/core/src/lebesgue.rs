//! Discrete estimates of the diffused Lebesgue constant
//! `Λ_d = sup_ξ Σ_i μ(K_i) |ℓ_{K_i}(ξ)|`.
//!
//! The short estimator samples that supremum on a point grid
//! (`‖W^X V⁻¹ K‖_∞`); the long one replaces points by probe discs
//! (`‖S W^S V⁻¹ K‖_∞`). Both reduce to a maximum of absolute row sums, which
//! is computed row by row in parallel.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::geometry::{apply_affine, AffineMap2, DiscSupport, Domain, Point2, SupportSet};
use crate::par;
use crate::vandermonde::{assemble, integral_rows, FactoredVandermonde, VandermondeMatrix, UNISOLVENCE_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    points: Vec<Point2>,
    description: String,
}

impl EvalGrid {
    pub fn new(points: Vec<Point2>, description: impl Into<String>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFinitePoint(p.x, p.y));
        }
        Ok(Self { points, description: description.into() })
    }

    /// `n_radii × n_angles` polar grid on the unit disc plus the origin.
    /// Radii are `i / n_radii`, so the outermost ring is the boundary.
    pub fn polar(n_radii: usize, n_angles: usize) -> Self {
        let mut points = Vec::with_capacity(n_radii * n_angles + 1);
        points.push(Point2::ORIGIN);
        for i in 1..=n_radii {
            let r = i as f64 / n_radii as f64;
            for k in 0..n_angles {
                let (s, c) = (2.0 * PI * k as f64 / n_angles as f64).sin_cos();
                points.push(Point2::new(r * c, r * s));
            }
        }
        Self { points, description: format!("polar {n_radii}x{n_angles}+origin") }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn mapped(&self, map: &AffineMap2) -> Self {
        Self {
            points: self.points.iter().map(|&p| map.apply(p)).collect(),
            description: format!("{} (mapped)", self.description),
        }
    }

    /// All points inside `domain`.
    pub fn is_inside(&self, domain: &Domain) -> bool {
        self.points.iter().all(|&p| domain.contains_point(p))
    }
}

impl Default for EvalGrid {
    fn default() -> Self {
        Self::polar(60, 120)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeFamily {
    probes: Vec<DiscSupport>,
}

impl ProbeFamily {
    pub fn new(probes: Vec<DiscSupport>) -> Self {
        Self { probes }
    }

    /// Discs of radius `radius` at a polar grid of centers (origin
    /// included). Ring `i` sits at `(i/n_radii)(1 - 10⁻³)` and its probes
    /// shrink so they stay inside the unit disc.
    pub fn polar(n_radii: usize, n_angles: usize, radius: f64) -> Result<Self> {
        let mut probes = Vec::with_capacity(n_radii * n_angles + 1);
        probes.push(DiscSupport::new(Point2::ORIGIN, radius)?);
        for i in 1..=n_radii {
            let rho = (i as f64 / n_radii as f64) * (1.0 - 1e-3);
            let r = radius.min(1.0 - rho);
            for k in 0..n_angles {
                let (s, c) = (2.0 * PI * k as f64 / n_angles as f64).sin_cos();
                probes.push(DiscSupport::new(Point2::new(rho * c, rho * s), r)?);
            }
        }
        Ok(Self { probes })
    }

    /// One probe of the given radius around each point.
    pub fn around(points: &[Point2], radius: f64) -> Result<Self> {
        let probes = points.iter().map(|&p| DiscSupport::new(p, radius)).collect::<Result<_>>()?;
        Ok(Self { probes })
    }

    pub fn probes(&self) -> &[DiscSupport] {
        &self.probes
    }

    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probes.is_empty()
    }
}

impl Default for ProbeFamily {
    fn default() -> Self {
        Self::polar(40, 80, 0.01).expect("valid default probes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Short,
    Long,
    Nodal,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Short => "short",
            Method::Long => "long",
            Method::Nodal => "nodal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LebesgueEstimate {
    pub value: f64,
    pub method: Method,
    /// Number of grid points or probes `M`.
    pub grid_size: usize,
    pub degree: usize,
}

/// `max_ℓ Σ_i |(R B)_{ℓ i}|` where row `ℓ` of `R` is produced by `row`.
fn max_abs_row_sum<F>(m: usize, n: usize, b: &DMatrix<f64>, row: F) -> Result<f64>
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    let value = par::max_range(m, |l| {
        let mut r = vec![0.0; n];
        row(l, &mut r);
        (0..n).map(|i| b.column(i).iter().zip(&r).map(|(c, w)| c * w).sum::<f64>().abs()).sum::<f64>()
    })
    .ok_or(Error::Empty("evaluation grid"))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("Lebesgue estimate is {value}")))
    }
}

/// `V⁻¹ K` for the unnormalized assembly of `set`.
fn scaled_inverse(set: &SupportSet, spec: &BasisSpec) -> Result<DMatrix<f64>> {
    let v = assemble(set, spec, false)?;
    scaled_inverse_of(&v)
}

fn scaled_inverse_of(v: &VandermondeMatrix) -> Result<DMatrix<f64>> {
    let fact = FactoredVandermonde::new(v, UNISOLVENCE_TOL)?;
    let k = if v.is_normalized() {
        DMatrix::identity(v.dim(), v.dim())
    } else {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(v.support_measures()))
    };
    fact.solve(&k)
}

fn check_grid(m: usize, n: usize) -> Result<()> {
    if m < n {
        return Err(Error::SizeMismatch { expected: n, got: m });
    }
    Ok(())
}

/// `‖W^X V⁻¹ K‖_∞` with `W^X_{ℓj} = p_j(ξ_ℓ)`.
pub fn lebesgue_short(set: &SupportSet, spec: &BasisSpec, grid: &EvalGrid) -> Result<LebesgueEstimate> {
    let n = spec.len();
    check_grid(grid.len(), n)?;
    let b = scaled_inverse(set, spec)?;
    let value = max_abs_row_sum(grid.len(), n, &b, |l, row| spec.eval_into(grid.points[l], row))?;
    Ok(LebesgueEstimate { value, method: Method::Short, grid_size: grid.len(), degree: spec.degree() })
}

/// `‖S W^S V⁻¹ K‖_∞` with `W^S_{ℓj} = ∫_{S_ℓ} p_j` and `S = diag(1/μ(S_ℓ))`.
pub fn lebesgue_long(set: &SupportSet, spec: &BasisSpec, probes: &ProbeFamily) -> Result<LebesgueEstimate> {
    let n = spec.len();
    check_grid(probes.len(), n)?;
    let b = scaled_inverse(set, spec)?;
    let ws = integral_rows(probes.probes(), spec, true);
    let value = max_abs_row_sum(probes.len(), n, &b, |l, row| {
        row.iter_mut().zip(ws.row(l).iter()).for_each(|(r, w)| *r = *w);
    })?;
    Ok(LebesgueEstimate { value, method: Method::Long, grid_size: probes.len(), degree: spec.degree() })
}

/// Classical Lebesgue constant `max_x Σ_i |ℓ_{ξ_i}(x)|` of point interpolation.
pub fn nodal_lebesgue(points: &[Point2], spec: &BasisSpec, grid: &EvalGrid) -> Result<LebesgueEstimate> {
    let n = spec.len();
    if points.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: points.len() });
    }
    check_grid(grid.len(), n)?;
    let mut data = Vec::with_capacity(n * n);
    for &p in points {
        data.extend(spec.eval(p));
    }
    let nodal = VandermondeMatrix::from_parts(DMatrix::from_row_slice(n, n, &data), spec.clone(), true, vec![1.0; n])?;
    let b = scaled_inverse_of(&nodal)?;
    let value = max_abs_row_sum(grid.len(), n, &b, |l, row| spec.eval_into(grid.points[l], row))?;
    Ok(LebesgueEstimate { value, method: Method::Nodal, grid_size: grid.len(), degree: spec.degree() })
}

/// Short estimates before and after a similarity map, the grid mapped too.
pub fn invariance_check(
    set: &SupportSet,
    spec: &BasisSpec,
    map: &AffineMap2,
    grid: &EvalGrid,
) -> Result<(LebesgueEstimate, LebesgueEstimate)> {
    let before = lebesgue_short(set, spec, grid)?;
    let mapped = apply_affine(set, map)?;
    let after = lebesgue_short(&mapped, spec, &grid.mapped(map))?;
    Ok((before, after))
}
