//! The histopolation projector `Πf = Σ_i (∫_{K_i} f) ℓ_{K_i}` and error
//! measurement on grids.

use std::fmt;
use std::sync::Arc;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::geometry::{Point2, SupportSet};
use crate::lebesgue::EvalGrid;
use crate::par;
use crate::quadrature::{integrate, QuadRule};
use crate::vandermonde::{assemble, FactoredVandermonde, UNISOLVENCE_TOL};

/// A named real function on the plane.
#[derive(Clone)]
pub struct Integrand {
    name: String,
    f: Arc<dyn Fn(Point2) -> f64 + Send + Sync>,
}

impl Integrand {
    pub fn new(name: impl Into<String>, f: impl Fn(Point2) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, p: Point2) -> f64 {
        (self.f)(p)
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand").field("name", &self.name).finish_non_exhaustive()
    }
}

/// `f1(x, y) = e^x sin(x + y)`.
pub fn f1() -> Integrand {
    Integrand::new("f1", |p| p.x.exp() * (p.x + p.y).sin())
}

/// `f2(x, y) = 1 / (25(x² + y²) + 1)`, a Runge-type function.
pub fn f2() -> Integrand {
    Integrand::new("f2", |p| 1.0 / (25.0 * (p.x * p.x + p.y * p.y) + 1.0))
}

pub fn builtin_integrands() -> Vec<Integrand> {
    vec![f1(), f2()]
}

/// A polynomial expressed in a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyInterpolant {
    spec: BasisSpec,
    coeffs: Vec<f64>,
}

impl PolyInterpolant {
    pub fn new(spec: BasisSpec, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != spec.len() {
            return Err(Error::SizeMismatch { expected: spec.len(), got: coeffs.len() });
        }
        Ok(Self { spec, coeffs })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, p: Point2) -> f64 {
        eval_interpolant(self, p)
    }

    /// Usable as an integrand, e.g. to re-project an interpolant.
    pub fn to_integrand(&self, name: impl Into<String>) -> Integrand {
        let p = self.clone();
        Integrand::new(name, move |x| p.eval(x))
    }
}

pub fn eval_interpolant(p: &PolyInterpolant, point: Point2) -> f64 {
    let b = p.spec.eval(point);
    p.coeffs.iter().zip(&b).map(|(c, v)| c * v).sum()
}

/// Data integrals `∫_{K_i} f` with a rule of the given exactness.
pub fn data_integrals(f: &Integrand, set: &SupportSet, exactness: usize) -> Result<Vec<f64>> {
    let unit = QuadRule::unit(exactness);
    par::map_slice(set.supports(), |k| integrate(&unit.mapped(k.center(), k.radius()), |x| f.eval(x)))
        .into_iter()
        .collect()
}

/// Coefficients `a` of the interpolant solving `V a = (∫_{K_i} p)_i`.
pub fn project_data(data: &[f64], set: &SupportSet, spec: &BasisSpec) -> Result<PolyInterpolant> {
    if data.len() != spec.len() {
        return Err(Error::SizeMismatch { expected: spec.len(), got: data.len() });
    }
    if let Some(v) = data.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("data integral {v}")));
    }
    let v = assemble(set, spec, false)?;
    let fact = FactoredVandermonde::new(&v, UNISOLVENCE_TOL)?;
    PolyInterpolant::new(spec.clone(), fact.solve_vec(data)?)
}

/// `Πf`, with data integrals computed to exactness `data_exactness`.
pub fn project(f: &Integrand, set: &SupportSet, spec: &BasisSpec, data_exactness: usize) -> Result<PolyInterpolant> {
    let exactness = data_exactness.max(spec.degree());
    let data = data_integrals(f, set, exactness)?;
    project_data(&data, set, spec)
}

/// `max_x |f(x) - p(x)|` over the grid.
pub fn sup_error(f: &Integrand, p: &PolyInterpolant, grid: &EvalGrid) -> f64 {
    sup_on_grid(grid, |x| (f.eval(x) - p.eval(x)).abs())
}

/// `max_x |g(x)|`-style maximum of `g` over the grid; zero for an empty grid.
pub fn sup_on_grid<G: Fn(Point2) -> f64 + Sync + Send>(grid: &EvalGrid, g: G) -> f64 {
    let pts = grid.points();
    par::max_range(pts.len(), |i| g(pts[i])).unwrap_or(0.0)
}
