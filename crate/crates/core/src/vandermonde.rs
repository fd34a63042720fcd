//! Histopolation Vandermonde matrices `V_ij = ∫_{K_i} p_j` and the dual
//! (Lagrange) basis they determine.

use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::basis::{basis_size, BasisSpec};
use crate::error::{Error, Result};
use crate::geometry::SupportSet;
use crate::par;
use crate::quadrature::{basis_integrals_with, QuadRule};

/// Default threshold on `σ_min / σ_max` of the normalized matrix.
pub const UNISOLVENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeMatrix {
    values: DMatrix<f64>,
    spec: BasisSpec,
    normalized: bool,
    support_measures: Vec<f64>,
}

impl VandermondeMatrix {
    /// Wraps an already computed matrix; used for tests and external data.
    pub fn from_parts(
        values: DMatrix<f64>,
        spec: BasisSpec,
        normalized: bool,
        support_measures: Vec<f64>,
    ) -> Result<Self> {
        let n = spec.len();
        if values.nrows() != n || values.ncols() != n {
            return Err(Error::SizeMismatch { expected: n, got: values.nrows().max(values.ncols()) });
        }
        if support_measures.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: support_measures.len() });
        }
        if let Some(&m) = support_measures.iter().find(|m| !(**m > 0.0)) {
            return Err(Error::InvalidRadius(m));
        }
        Ok(Self { values, spec, normalized, support_measures })
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn support_measures(&self) -> &[f64] {
        &self.support_measures
    }

    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    /// The row-normalized variant `diag(1/μ) V` (a copy if already normalized).
    pub fn to_normalized(&self) -> DMatrix<f64> {
        let mut m = self.values.clone();
        if !self.normalized {
            for (i, mu) in self.support_measures.iter().enumerate() {
                m.row_mut(i).scale_mut(1.0 / mu);
            }
        }
        m
    }

    /// Writes the matrix as CSV, row-major, full precision.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        write_matrix_csv(&self.values, out)
    }
}

pub fn write_matrix_csv<W: Write>(m: &DMatrix<f64>, mut out: W) -> io::Result<()> {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:.17e}", m[(i, j)])).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// `M × N` matrix of basis integrals over `discs`, each row optionally
/// divided by the disc measure. Rows are computed independently.
pub(crate) fn integral_rows(set: &[crate::geometry::DiscSupport], spec: &BasisSpec, normalized: bool) -> DMatrix<f64> {
    let n = spec.len();
    let unit = QuadRule::unit(spec.degree());
    let mut data = vec![0.0; set.len() * n];
    par::for_each_row(&mut data, n, |i, row| {
        let mut scratch = vec![0.0; n];
        basis_integrals_with(&set[i], spec, &unit, row, &mut scratch);
        if normalized {
            let inv = 1.0 / set[i].measure();
            row.iter_mut().for_each(|v| *v *= inv);
        }
    });
    DMatrix::from_row_slice(set.len(), n, &data)
}

pub fn assemble(set: &SupportSet, spec: &BasisSpec, normalized: bool) -> Result<VandermondeMatrix> {
    let n = basis_size(spec.degree());
    if set.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: set.len() });
    }
    Ok(VandermondeMatrix {
        values: integral_rows(set.supports(), spec, normalized),
        spec: spec.clone(),
        normalized,
        support_measures: set.measures(),
    })
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// `σ_min / σ_max`, zero for an empty or zero matrix.
pub(crate) fn relative_min_singular_value(m: &DMatrix<f64>) -> f64 {
    let sv = singular_values(m);
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max > 0.0 && max.is_finite() && min.is_finite() {
        min / max
    } else {
        0.0
    }
}

/// `σ_min / σ_max` of the normalized form of `v`.
pub fn rcond(v: &VandermondeMatrix) -> f64 {
    relative_min_singular_value(&v.to_normalized())
}

/// 2-norm condition number; `+∞` when numerically singular.
pub fn condition_number(v: &VandermondeMatrix) -> f64 {
    matrix_condition_number(&v.values)
}

pub fn matrix_condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = singular_values(m);
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max.is_finite() && min.is_finite()) || min <= f64::EPSILON * max || max == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// An LU factorization of a checked-nonsingular Vandermonde matrix.
#[derive(Debug, Clone)]
pub struct FactoredVandermonde {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    rcond: f64,
}

impl FactoredVandermonde {
    /// Factors `v` after checking `σ_min/σ_max > tol` on its normalized form.
    pub fn new(v: &VandermondeMatrix, tol: f64) -> Result<Self> {
        let rcond = relative_min_singular_value(&v.to_normalized());
        if !(rcond > tol) {
            return Err(Error::NotUnisolvent { rcond });
        }
        Ok(Self { lu: v.values.clone().lu(), rcond })
    }

    /// `σ_min/σ_max` of the normalized matrix.
    pub fn rcond(&self) -> f64 {
        self.rcond
    }

    /// Solves `V X = B`.
    pub fn solve(&self, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.lu.solve(rhs).ok_or(Error::NotUnisolvent { rcond: self.rcond })
    }

    pub fn solve_vec(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let b = nalgebra::DVector::from_column_slice(rhs);
        self.lu.solve(&b).map(|x| x.iter().copied().collect()).ok_or(Error::NotUnisolvent { rcond: self.rcond })
    }
}

/// Coefficients of the dual basis: row `i` expands `ℓ_{K_i}` in the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeCoeffs {
    coeffs: DMatrix<f64>,
    spec: BasisSpec,
    residual: f64,
}

impl LagrangeCoeffs {
    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    /// `‖V Cᵀ − I‖_∞` measured after the solve.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Value of `ℓ_{K_i}` at `p`.
    pub fn eval(&self, i: usize, p: crate::geometry::Point2) -> f64 {
        let b = self.spec.eval(p);
        self.coeffs.row(i).iter().zip(&b).map(|(c, v)| c * v).sum()
    }
}

/// `C = V^{-T}` via `V X = I`, `C = Xᵀ`.
pub fn lagrange_coeffs(v: &VandermondeMatrix) -> Result<LagrangeCoeffs> {
    lagrange_coeffs_with_tol(v, UNISOLVENCE_TOL)
}

pub fn lagrange_coeffs_with_tol(v: &VandermondeMatrix, tol: f64) -> Result<LagrangeCoeffs> {
    let n = v.dim();
    let fact = FactoredVandermonde::new(v, tol)?;
    let x = fact.solve(&DMatrix::identity(n, n))?;
    let residual = inf_norm(&(&v.values * &x - DMatrix::<f64>::identity(n, n)));
    Ok(LagrangeCoeffs { coeffs: x.transpose(), spec: v.spec.clone(), residual })
}

/// Maximum absolute row sum.
pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// True iff the normalized Vandermonde matrix has `σ_min > tol·σ_max`.
/// Sets of the wrong size are never unisolvent.
pub fn is_unisolvent(set: &SupportSet, spec: &BasisSpec, tol: f64) -> bool {
    match assemble(set, spec, true) {
        Ok(v) => relative_min_singular_value(v.values()) > tol,
        Err(_) => false,
    }
}
