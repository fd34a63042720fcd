//! Greedy extraction of well-conditioned supports from a large pool of
//! candidate discs.
//!
//! Both procedures work on the `M × N` matrix whose row `ℓ` holds the
//! normalized basis integrals `(1/μ(S_ℓ)) ∫_{S_ℓ} p_j` of candidate `ℓ`.
//!
//! * Approximate Fekete supports: QR with column pivoting of the transposed
//!   matrix, i.e. repeatedly take the candidate row with the largest norm
//!   after projecting out the rows already taken.
//! * Discrete Leja supports: Gaussian elimination with row pivoting; the
//!   pivot rows, in order, form a nested sequence.
//!
//! Ties go to the lowest candidate index.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::geometry::{DiscSupport, Domain, Point2, SupportSet};
use crate::par;
use crate::vandermonde::integral_rows;

/// Relative size below which a residual or pivot counts as zero.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePool {
    candidates: Vec<DiscSupport>,
    matrix: DMatrix<f64>,
    spec: BasisSpec,
}

impl CandidatePool {
    pub fn candidates(&self) -> &[DiscSupport] {
        &self.candidates
    }

    /// `M × N` normalized integral matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The same pool for a lower degree: in graded order that is a column prefix.
    pub fn truncated(&self, degree: usize) -> CandidatePool {
        let spec = self.spec.truncated(degree);
        let matrix = self.matrix.columns(0, spec.len()).into_owned();
        CandidatePool { candidates: self.candidates.clone(), matrix, spec }
    }

    /// Pool with a precomputed matrix; rows must match candidates.
    pub fn from_parts(candidates: Vec<DiscSupport>, matrix: DMatrix<f64>, spec: BasisSpec) -> Result<Self> {
        if matrix.nrows() != candidates.len() {
            return Err(Error::SizeMismatch { expected: candidates.len(), got: matrix.nrows() });
        }
        if matrix.ncols() != spec.len() {
            return Err(Error::SizeMismatch { expected: spec.len(), got: matrix.ncols() });
        }
        Ok(Self { candidates, matrix, spec })
    }

    fn row_major(&self) -> Vec<f64> {
        let (m, n) = self.matrix.shape();
        let mut out = Vec::with_capacity(m * n);
        for i in 0..m {
            out.extend(self.matrix.row(i).iter());
        }
        out
    }

    fn selected_set(&self, order: &[usize]) -> Result<SupportSet> {
        SupportSet::unit_disc(order.iter().map(|&i| self.candidates[i]).collect())
    }
}

/// Discs of a common radius at `centers`, with their normalized integrals.
pub fn build_pool(centers: &[Point2], radius: f64, spec: &BasisSpec) -> Result<CandidatePool> {
    let candidates = centers.iter().map(|&c| DiscSupport::new(c, radius)).collect::<Result<Vec<_>>>()?;
    if let Some(bad) = candidates.iter().find(|d| !Domain::UnitDisc.contains_disc(d)) {
        return Err(Error::Containment { cx: bad.center().x, cy: bad.center().y, r: bad.radius() });
    }
    let matrix = integral_rows(&candidates, spec, true);
    Ok(CandidatePool { candidates, matrix, spec: spec.clone() })
}

/// Centers of a Cartesian grid with the given spacing (one node at the
/// origin) that keep a disc of radius `radius` inside the unit disc.
pub fn uniform_grid_centers(spacing: f64, radius: f64) -> Vec<Point2> {
    let limit = 1.0 - radius;
    let k = (limit / spacing).floor() as i64;
    let mut out = Vec::new();
    for j in -k..=k {
        for i in -k..=k {
            let p = Point2::new(i as f64 * spacing, j as f64 * spacing);
            if p.norm() <= limit {
                out.push(p);
            }
        }
    }
    out
}

/// Spacing and radius (`radius_ratio` · spacing) of the uniform pool with
/// about `target` candidates.
pub fn uniform_pool_geometry(target: usize, radius_ratio: f64) -> (f64, f64) {
    let mut spacing = (std::f64::consts::PI / target.max(1) as f64).sqrt();
    // shrink until the clipped grid reaches the target
    for _ in 0..200 {
        if uniform_grid_centers(spacing, radius_ratio * spacing).len() >= target {
            break;
        }
        spacing *= 0.995;
    }
    (spacing, radius_ratio * spacing)
}

/// Uniform grid pool of about `target` pairwise disjoint discs.
pub fn uniform_pool(target: usize, radius_ratio: f64, spec: &BasisSpec) -> Result<CandidatePool> {
    let (spacing, radius) = uniform_pool_geometry(target, radius_ratio);
    build_pool(&uniform_grid_centers(spacing, radius), radius, spec)
}

/// Supports chosen from a pool, with their pool indices in selection order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractedSet {
    #[serde(flatten)]
    pub set: SupportSet,
    /// Pool indices in pivot order; present for Leja sequences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

/// Index of the largest value, lowest index on ties.
fn argmax(values: impl Iterator<Item = (usize, f64)>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best
}

fn check_rank(pool: &CandidatePool) -> Result<()> {
    let n = pool.spec.len();
    if pool.len() < n {
        return Err(Error::PoolTooPoor { rank: pool.len(), needed: n });
    }
    Ok(())
}

/// Pool indices chosen by column-pivoted QR of the transposed pool matrix.
pub fn fekete_indices(pool: &CandidatePool) -> Result<Vec<usize>> {
    check_rank(pool)?;
    let n = pool.spec.len();
    let mut rows = pool.row_major();
    let scale = rows.chunks(n).map(|r| dot(r, r)).fold(0.0, f64::max).sqrt();
    let mut taken = vec![false; pool.len()];
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    for k in 0..n {
        let (p, norm2) = argmax(rows.chunks(n).enumerate().filter(|(i, _)| !taken[*i]).map(|(i, r)| (i, dot(r, r))))
            .expect("pool has untaken rows");
        if !(norm2.sqrt() > RANK_TOL * scale) {
            return Err(Error::PoolTooPoor { rank: k, needed: n });
        }
        taken[p] = true;
        order.push(p);
        let mut q = rows[p * n..(p + 1) * n].to_vec();
        // re-orthogonalize against earlier directions before normalizing
        for b in &basis {
            let c = dot(&q, b);
            q.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let len = dot(&q, &q).sqrt();
        q.iter_mut().for_each(|x| *x /= len);
        par::for_each_row(&mut rows, n, |i, row| {
            if !taken[i] {
                let c = dot(row, &q);
                row.iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
            }
        });
        basis.push(q);
    }
    Ok(order)
}

/// Pool indices chosen, in order, by row-pivoted LU of the pool matrix.
pub fn leja_indices(pool: &CandidatePool) -> Result<Vec<usize>> {
    check_rank(pool)?;
    let n = pool.spec.len();
    let mut rows = pool.row_major();
    let mut taken = vec![false; pool.len()];
    let mut order = Vec::with_capacity(n);
    for k in 0..n {
        let (p, piv) = argmax(rows.chunks(n).enumerate().filter(|(i, _)| !taken[*i]).map(|(i, r)| (i, r[k].abs())))
            .expect("pool has untaken rows");
        let unit = pool.matrix.column(k).iter().map(|v| v.abs()).fold(0.0, f64::max);
        if !(piv > RANK_TOL * unit) {
            return Err(Error::PoolTooPoor { rank: k, needed: n });
        }
        taken[p] = true;
        order.push(p);
        let pivot_row = rows[p * n..(p + 1) * n].to_vec();
        par::for_each_row(&mut rows, n, |i, row| {
            if !taken[i] {
                let f = row[k] / pivot_row[k];
                row[k] = 0.0;
                for j in k + 1..n {
                    row[j] -= f * pivot_row[j];
                }
            }
        });
    }
    Ok(order)
}

/// Approximate Fekete supports.
pub fn approximate_fekete(pool: &CandidatePool) -> Result<ExtractedSet> {
    let order = fekete_indices(pool)?;
    Ok(ExtractedSet { set: pool.selected_set(&order)?, order: None })
}

/// Discrete Leja supports; `order` records the pool indices in pivot order.
pub fn discrete_leja(pool: &CandidatePool) -> Result<ExtractedSet> {
    let order = leja_indices(pool)?;
    Ok(ExtractedSet { set: pool.selected_set(&order)?, order: Some(order) })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
