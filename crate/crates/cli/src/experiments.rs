//! The computations behind each command, returning plain rows so that the
//! same numbers can be written, plotted, or checked directly.

use histopol_core::geometry::min_separation;
use histopol_core::interp::{f1, f2, sup_error};
use histopol_core::{
    assemble, condition_number, fitted_discs, lebesgue_long, lebesgue_short, nodal_lebesgue, project,
    translated_supports, BasisKind, BasisSpec, EvalGrid, Method, Point2, ProbeFamily, SupportSet,
};

use crate::config::ExperimentConfig;
use crate::families::{Family, SupportSource};

/// Order-preserving map, parallel when the `parallel` feature is on.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// A per-degree failure that did not stop the run.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub degree: usize,
    pub family: Family,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CondRow {
    pub degree: usize,
    pub family: Family,
    pub basis: BasisKind,
    pub radius: f64,
    pub cond: f64,
}

/// Condition numbers of the unnormalized Vandermonde matrix in both bases,
/// for discs at Halton and Bojanov–Xu nodes.
pub fn cond_rows(cfg: &ExperimentConfig) -> Vec<CondRow> {
    let degrees: Vec<usize> = cfg.degrees.iter().collect();
    par_map(&degrees, |&d| {
        let mut rows = Vec::with_capacity(4);
        for family in [Family::Halton, Family::BojanovXu] {
            let nodes = family.nodes(d, cfg.seed).expect("point family");
            let (set, radius) = fitted_discs(&nodes, cfg.radius_ratio).expect("fitted discs are contained");
            for basis in [BasisKind::Monomial, BasisKind::Chebyshev] {
                let v = assemble(&set, &BasisSpec::new(basis, d), false).expect("square by construction");
                rows.push(CondRow { degree: d, family, basis, radius, cond: condition_number(&v) });
            }
        }
        rows
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaRow {
    pub degree: usize,
    pub lambda: f64,
    pub method: Method,
    pub grid_size: usize,
}

pub fn eval_grid(cfg: &ExperimentConfig) -> EvalGrid {
    EvalGrid::polar(cfg.grid.radii, cfg.grid.angles)
}

/// Lebesgue constants of one family over the configured degrees, plus the
/// nodal constant of the centers when requested and meaningful.
pub fn lebesgue_rows(
    source: &SupportSource,
    cfg: &ExperimentConfig,
    degrees: &[usize],
) -> (Vec<LambdaRow>, Vec<Failure>) {
    let grid = eval_grid(cfg);
    let probes = (cfg.method == Method::Long)
        .then(|| ProbeFamily::polar(cfg.probes.radii, cfg.probes.angles, cfg.probes.radius).expect("validated probes"));
    let results = par_map(degrees, |&d| {
        let spec = BasisSpec::new(cfg.basis, d);
        let fail = |e: histopol_core::Error| Failure { degree: d, family: source.family(), message: e.to_string() };
        let set = match source.supports(d) {
            Ok(s) => s,
            Err(e) => return (vec![], vec![fail(e)]),
        };
        let mut rows = vec![];
        let mut failures = vec![];
        let est = match &probes {
            Some(p) => lebesgue_long(&set, &spec, p),
            None => lebesgue_short(&set, &spec, &grid),
        };
        match est {
            Ok(e) => rows.push(LambdaRow { degree: d, lambda: e.value, method: e.method, grid_size: e.grid_size }),
            Err(e) => failures.push(fail(e)),
        }
        if cfg.nodal_baseline && source.family() != Family::Orbit {
            match nodal_lebesgue(&set.centers(), &spec, &grid) {
                Ok(e) => rows.push(LambdaRow { degree: d, lambda: e.value, method: e.method, grid_size: e.grid_size }),
                Err(e) => failures.push(fail(e)),
            }
        }
        (rows, failures)
    });
    let mut rows = vec![];
    let mut failures = vec![];
    for (r, f) in results {
        rows.extend(r);
        failures.extend(f);
    }
    (rows, failures)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub degree: usize,
    /// `radius / r_max`.
    pub ratio: f64,
    pub radius: f64,
    pub lambda: f64,
    pub nodal: f64,
}

/// Centers for a radius sweep: `nodes` contracted once so that discs of the
/// largest disjoint radius `r_max` (half the minimal separation) fit in the
/// unit disc. Returns the centers and `r_max`.
pub fn sweep_centers(nodes: &[Point2]) -> histopol_core::Result<(Vec<Point2>, f64)> {
    let (set, _) = fitted_discs(nodes, 0.5)?;
    let centers = set.centers();
    let r_max = 0.5 * min_separation(&centers).unwrap_or(2.0);
    Ok((centers, r_max))
}

/// Short Lebesgue constants of discs of radius `k/steps · r_max` at fixed
/// centers, next to the nodal constant of those centers.
pub fn radius_sweep(
    nodes: &[Point2],
    spec: &BasisSpec,
    grid: &EvalGrid,
    steps: usize,
) -> histopol_core::Result<Vec<SweepRow>> {
    let (centers, r_max) = sweep_centers(nodes)?;
    let nodal = nodal_lebesgue(&centers, spec, grid)?.value;
    let ks: Vec<usize> = (1..=steps).collect();
    par_map(&ks, |&k| {
        let ratio = k as f64 / steps as f64;
        let radius = ratio * r_max;
        let lambda = lebesgue_short(&translated_supports(&centers, radius)?, spec, grid)?.value;
        Ok(SweepRow { degree: spec.degree(), ratio, radius, lambda, nodal })
    })
    .into_iter()
    .collect()
}

/// `(max − min) / max` of the swept values.
pub fn relative_spread(rows: &[SweepRow]) -> f64 {
    let max = rows.iter().map(|r| r.lambda).fold(f64::NEG_INFINITY, f64::max);
    let min = rows.iter().map(|r| r.lambda).fold(f64::INFINITY, f64::min);
    (max - min) / max
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub degree: usize,
    pub family: Family,
    pub f1: f64,
    pub f2: f64,
}

/// Sup-norm interpolation errors of the two test functions.
pub fn interp_rows(
    sources: &[SupportSource],
    cfg: &ExperimentConfig,
    degrees: &[usize],
) -> (Vec<ErrorRow>, Vec<Failure>) {
    let grid = eval_grid(cfg);
    let jobs: Vec<(usize, usize)> = (0..sources.len()).flat_map(|s| degrees.iter().map(move |&d| (s, d))).collect();
    let results = par_map(&jobs, |&(s, d)| {
        let source = &sources[s];
        let spec = BasisSpec::new(cfg.basis, d);
        let exactness = data_exactness(cfg, d);
        let run = || -> histopol_core::Result<ErrorRow> {
            let set = source.supports(d)?;
            let e1 = sup_error(&f1(), &project(&f1(), &set, &spec, exactness)?, &grid);
            let e2 = sup_error(&f2(), &project(&f2(), &set, &spec, exactness)?, &grid);
            Ok(ErrorRow { degree: d, family: source.family(), f1: e1, f2: e2 })
        };
        run().map_err(|e| Failure { degree: d, family: source.family(), message: e.to_string() })
    });
    let mut rows = vec![];
    let mut failures = vec![];
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(f) => failures.push(f),
        }
    }
    (rows, failures)
}

pub fn data_exactness(cfg: &ExperimentConfig, d: usize) -> usize {
    2 * d + cfg.data_exactness_offset
}

/// `(x, y, f2, Πf2)` on a polar grid.
pub fn surface(
    set: &SupportSet,
    cfg: &ExperimentConfig,
    degree: usize,
    grid: &EvalGrid,
) -> histopol_core::Result<Vec<[f64; 4]>> {
    let spec = BasisSpec::new(cfg.basis, degree);
    let f = f2();
    let p = project(&f, set, &spec, data_exactness(cfg, degree))?;
    Ok(grid.points().iter().map(|&x| [x.x, x.y, f.eval(x), p.eval(x)]).collect())
}
