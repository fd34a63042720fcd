mod common;

use histopol_core::vandermonde::{inf_norm, UNISOLVENCE_TOL};
use histopol_core::{
    assemble, basis_size, bojanov_xu_points, fitted_discs, is_unisolvent, lagrange_coeffs, orbit_supports,
    translated_supports, BasisSpec, OrbitSchedule, Point2, SupportSet,
};
use nalgebra::DMatrix;

fn duality_residual(set: &SupportSet, spec: &BasisSpec) -> f64 {
    let v = assemble(set, spec, false).unwrap();
    let l = lagrange_coeffs(&v).unwrap();
    let n = spec.len();
    inf_norm(&(v.values() * l.coeffs().transpose() - DMatrix::<f64>::identity(n, n)))
}

#[test]
fn normalized_assembly_is_row_scaled() {
    let mut rng = common::rng(3);
    for d in 0..=8 {
        let set = common::random_disjoint_set(&mut rng, basis_size(d));
        let spec = BasisSpec::chebyshev(d);
        let raw = assemble(&set, &spec, false).unwrap();
        let norm = assemble(&set, &spec, true).unwrap();
        for (i, mu) in set.measures().iter().enumerate() {
            for j in 0..spec.len() {
                let want = raw.values()[(i, j)] / mu;
                assert!((norm.values()[(i, j)] - want).abs() <= 1e-14, "d={d} ({i},{j})");
            }
        }
        assert_eq!(raw.to_normalized(), *norm.values());
    }
}

#[test]
fn duality_holds_on_standard_families() {
    for d in 1..=10 {
        let spec = BasisSpec::chebyshev(d);
        let (bx, _) = fitted_discs(&bojanov_xu_points(d), 0.4).unwrap();
        let orbit = orbit_supports(d, &OrbitSchedule::chebyshev(d, 0.4).unwrap()).unwrap();
        for (name, set) in [("bojanov-xu", bx), ("orbit", orbit)] {
            let r = duality_residual(&set, &spec);
            assert!(r <= 1e-8, "{name} d={d}: {r}");
        }
    }
}

#[test]
fn duality_holds_on_random_disjoint_sets() {
    let mut rng = common::rng(5);
    for d in 1..=8 {
        for _ in 0..5 {
            let set = common::random_disjoint_set(&mut rng, basis_size(d));
            let spec = BasisSpec::chebyshev(d);
            if is_unisolvent(&set, &spec, UNISOLVENCE_TOL) {
                assert!(duality_residual(&set, &spec) <= 1e-8, "d={d}");
            }
        }
    }
}

#[test]
fn lagrange_functions_integrate_to_kronecker() {
    let d = 4;
    let spec = BasisSpec::chebyshev(d);
    let (set, _) = fitted_discs(&bojanov_xu_points(d), 0.3).unwrap();
    let l = lagrange_coeffs(&assemble(&set, &spec, false).unwrap()).unwrap();
    // integrate each ℓ_j over each K_i with an independent, higher-order rule
    for (i, k) in set.supports().iter().enumerate() {
        let rule = histopol_core::disc_rule(k.center(), k.radius(), 3 * d + 4);
        for j in 0..spec.len() {
            let got = histopol_core::integrate(&rule, |p| l.eval(j, p)).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((got - want).abs() <= 1e-8, "({i},{j}) {got}");
        }
    }
}

#[test]
fn unisolvence_does_not_depend_on_the_basis() {
    let mut rng = common::rng(9);
    for k in 0..20 {
        let d = 1 + k % 8;
        let set = common::random_disjoint_set(&mut rng, basis_size(d));
        let cheb = is_unisolvent(&set, &BasisSpec::chebyshev(d), 1e-10);
        let mono = is_unisolvent(&set, &BasisSpec::monomial(d), 1e-10);
        assert_eq!(cheb, mono, "set {k}, d={d}");
        assert!(cheb, "random disjoint set {k} should be generic");
    }
}

#[test]
fn change_of_basis_is_nonsingular() {
    let mut rng = common::rng(13);
    for d in 0..=8 {
        let n = basis_size(d);
        let pts = common::random_centers(&mut rng, n, 0.95, 1e-3);
        let eval = |spec: BasisSpec| {
            let rows: Vec<f64> = pts.iter().flat_map(|&p| spec.eval(p)).collect();
            DMatrix::from_row_slice(n, n, &rows)
        };
        let mono = eval(BasisSpec::monomial(d));
        let cheb = eval(BasisSpec::chebyshev(d));
        let t = mono.clone().lu().solve(&cheb).unwrap();
        // graded order: the transition matrix is block upper triangular with
        // nonzero diagonal (leading coefficients 2^(a-1) 2^(b-1))
        let det = t.determinant();
        assert!(det.abs() > 1e-6, "d={d} det={det}");
        for (col, idx) in BasisSpec::chebyshev(d).indices().iter().enumerate() {
            let lead = 2f64.powi(idx.a.saturating_sub(1) as i32) * 2f64.powi(idx.b.saturating_sub(1) as i32);
            assert!((t[(col, col)] - lead).abs() <= 1e-6 * lead, "d={d} col={col}");
        }
    }
}

#[test]
fn collinear_translates_are_not_unisolvent_for_lines() {
    let set = translated_supports(&[Point2::new(-0.5, 0.0), Point2::ORIGIN, Point2::new(0.5, 0.0)], 0.1).unwrap();
    assert!(!is_unisolvent(&set, &BasisSpec::chebyshev(1), UNISOLVENCE_TOL));
    assert!(!is_unisolvent(&set, &BasisSpec::monomial(1), UNISOLVENCE_TOL));
    let bent =
        translated_supports(&[Point2::new(-0.5, 0.0), Point2::new(0.0, 0.3), Point2::new(0.5, 0.0)], 0.1).unwrap();
    assert!(is_unisolvent(&bent, &BasisSpec::chebyshev(1), UNISOLVENCE_TOL));
}
