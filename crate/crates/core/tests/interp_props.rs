mod common;

use histopol_core::interp::{data_integrals, project_data, sup_on_grid};
use histopol_core::{
    bojanov_xu_points, fitted_discs, lebesgue_short, orbit_supports, project, BasisSpec, EvalGrid, OrbitSchedule,
    PolyInterpolant, SupportSet,
};
use rand::Rng;

fn families(d: usize) -> Vec<(&'static str, SupportSet)> {
    vec![
        ("bojanov-xu", fitted_discs(&bojanov_xu_points(d), 0.4).unwrap().0),
        ("orbit", orbit_supports(d, &OrbitSchedule::chebyshev(d, 0.4).unwrap()).unwrap()),
    ]
}

fn random_poly(rng: &mut impl Rng, spec: &BasisSpec) -> PolyInterpolant {
    let c = (0..spec.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
    PolyInterpolant::new(spec.clone(), c).unwrap()
}

#[test]
fn projector_reproduces_random_polynomials() {
    let grid = EvalGrid::polar(30, 60);
    let mut rng = common::rng(21);
    for d in 1..=10 {
        let spec = BasisSpec::chebyshev(d);
        for (name, set) in families(d) {
            for _ in 0..50 {
                let p = random_poly(&mut rng, &spec);
                let f = p.to_integrand("p");
                let q = project(&f, &set, &spec, d).unwrap();
                let norm = sup_on_grid(&grid, |x| p.eval(x).abs());
                let err = sup_on_grid(&grid, |x| (p.eval(x) - q.eval(x)).abs());
                assert!(err <= 1e-8 * norm, "{name} d={d}: {err} vs {norm}");
            }
        }
    }
}

#[test]
fn projection_is_idempotent() {
    let d = 6;
    let spec = BasisSpec::chebyshev(d);
    let grid = EvalGrid::polar(30, 60);
    for (_, set) in families(d) {
        let once = project(&histopol_core::interp::f2(), &set, &spec, 40).unwrap();
        let twice = project(&once.to_integrand("Pf"), &set, &spec, d).unwrap();
        let err = sup_on_grid(&grid, |x| (once.eval(x) - twice.eval(x)).abs());
        assert!(err <= 1e-8 * sup_on_grid(&grid, |x| once.eval(x).abs()));
    }
}

#[test]
fn area_matching_conditions_hold() {
    let mut rng = common::rng(22);
    for d in [2usize, 5, 8] {
        let spec = BasisSpec::chebyshev(d);
        for (name, set) in families(d) {
            let p = random_poly(&mut rng, &spec).to_integrand("p");
            let q = project(&p, &set, &spec, d).unwrap().to_integrand("q");
            let dp = data_integrals(&p, &set, 2 * d).unwrap();
            let dq = data_integrals(&q, &set, 2 * d).unwrap();
            let scale = dp.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (a, b) in dp.iter().zip(&dq) {
                assert!((a - b).abs() <= 1e-8 * scale, "{name} d={d}");
            }
        }
        // non-polynomial data are matched up to solver residual
        let (set, _) = fitted_discs(&bojanov_xu_points(d), 0.4).unwrap();
        let f = histopol_core::interp::f1();
        let q = project(&f, &set, &spec, 40).unwrap().to_integrand("q");
        let df = data_integrals(&f, &set, 40).unwrap();
        let dq = data_integrals(&q, &set, 40).unwrap();
        let scale = df.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(df.iter().zip(&dq).all(|(a, b)| (a - b).abs() <= 1e-10 * scale));
    }
}

#[test]
fn perturbations_are_amplified_at_most_by_lambda() {
    let grid = EvalGrid::polar(40, 80);
    let mut rng = common::rng(23);
    for d in [3usize, 6, 9] {
        let spec = BasisSpec::chebyshev(d);
        for (name, set) in families(d) {
            let lambda = lebesgue_short(&set, &spec, &grid).unwrap().value;
            let f = histopol_core::interp::f1();
            let data = data_integrals(&f, &set, 40).unwrap();
            let base = project_data(&data, &set, &spec).unwrap();
            let eps = 1e-6;
            let mu = set.measures();
            for _ in 0..10 {
                // ε in the ∞-norm of the averaged data (1/μ_i)∫_{K_i} f
                let shifted: Vec<f64> = data
                    .iter()
                    .zip(&mu)
                    .map(|(v, m)| v + m * eps * if rng.random_bool(0.5) { 1.0 } else { -1.0 })
                    .collect();
                let moved = project_data(&shifted, &set, &spec).unwrap();
                let change = sup_on_grid(&grid, |x| (moved.eval(x) - base.eval(x)).abs());
                assert!(change <= lambda * eps * (1.0 + 1e-6), "{name} d={d}: {change} > {}", lambda * eps);
            }
        }
    }
}

#[test]
fn f1_converges_quickly() {
    let grid = EvalGrid::polar(30, 60);
    let f = histopol_core::interp::f1();
    let mut prev = f64::INFINITY;
    for d in [2usize, 6, 10, 14] {
        let spec = BasisSpec::chebyshev(d);
        let set = orbit_supports(d, &OrbitSchedule::chebyshev(d, 0.4).unwrap()).unwrap();
        let err = histopol_core::sup_error(&f, &project(&f, &set, &spec, 2 * d + 20).unwrap(), &grid);
        assert!(err < prev, "d={d}");
        prev = err;
    }
    assert!(prev < 1e-8);
}
