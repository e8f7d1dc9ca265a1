//! Randomised invariants of the solver and the identity checks.

use biharm::geometry::{translate, Curve};
use biharm::incident::IncidentField;
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::oracle::{mie_farfield, mie_solve};
use biharm::scenario::Scenario;
use biharm::solver::{farfield_biharmonic, Solver};
use biharm::verify::{check_symmetry, farfield_equivalence_residual, SymmetryComponent};
use proptest::prelude::*;
use std::f64::consts::PI;

fn k(v: f64) -> Wavenumber {
    Wavenumber::new(v).unwrap()
}

fn kite() -> Curve {
    Curve::kite(Point2::ORIGIN, 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // below the first interior Dirichlet eigenvalue of the unit circle
    #[test]
    fn circle_matches_series(kappa in 0.3..2.2f64, theta in 0.0..2.0 * PI) {
        let solver = Solver::new(&Curve::circle(Point2::ORIGIN, 1.0).unwrap(), k(kappa), 48).unwrap();
        let dirs = Direction::grid(24);
        let ts = solver.solve(&IncidentField::plane(theta)).unwrap();
        let far = farfield_biharmonic(&ts, solver.boundary(), &dirs);
        let series = mie_farfield(&mie_solve(1.0, k(kappa), theta, 40).unwrap(), &dirs);
        prop_assert!(far.max_abs_diff(&series) < 1e-10 * series.max_abs());
    }

    #[test]
    fn far_field_equivalence_holds(kappa in 0.3..3.0f64, theta in 0.0..2.0 * PI) {
        let solver = Solver::new(&kite(), k(kappa), 48).unwrap();
        let ts = solver.solve(&IncidentField::plane(theta)).unwrap();
        prop_assert!(farfield_equivalence_residual(&ts, solver.boundary(), &Direction::grid(36)) < 1e-12);
    }

    #[test]
    fn plane_wave_reciprocity(d in 0.0..2.0 * PI, x in 0.0..2.0 * PI) {
        let solver = Solver::new(&kite(), k(1.0), 64).unwrap();
        let a = solver.solve(&IncidentField::plane(d)).unwrap();
        let b = solver.solve(&IncidentField::plane(x + PI)).unwrap();
        let ua = solver.farfield(&a, &[Direction::new(x)]).values[0];
        let ub = solver.farfield(&b, &[Direction::new(d + PI)]).values[0];
        prop_assert!((ua - ub).norm() < 1e-9 * ua.norm().max(1e-3));
    }

    #[test]
    fn translation_keeps_far_field_modulus(h1 in -3.0..3.0f64, h2 in -3.0..3.0f64, theta in 0.0..2.0 * PI) {
        let dirs = Direction::grid(24);
        let inc = IncidentField::plane(theta);
        let base = Solver::new(&kite(), k(1.0), 48).unwrap();
        let moved = Solver::new(&translate(&kite(), Point2::new(h1, h2)), k(1.0), 48).unwrap();
        let f0 = base.farfield(&base.solve(&inc).unwrap(), &dirs);
        let f1 = moved.farfield(&moved.solve(&inc).unwrap(), &dirs);
        for (a, b) in f0.values.iter().zip(&f1.values) {
            prop_assert!((a.norm() - b.norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn point_source_symmetry(rx in 2.5..4.0f64, tx in 0.0..2.0 * PI, rz in 2.5..4.0f64, tz in 0.0..2.0 * PI) {
        let x = Point2::polar(rx, tx);
        let z = Point2::polar(rz, tz);
        prop_assume!(x.distance(z) > 0.5);
        for which in [SymmetryComponent::H, SymmetryComponent::Bi] {
            let r = check_symmetry(&kite(), k(1.0), 64, x, z, which, 1e-8).unwrap();
            prop_assert!(r.pass, "{}", r.summary());
        }
    }

    #[test]
    fn scenario_toml_round_trips(kappa in 0.1..10.0f64, n in 8usize..200, theta in -PI..PI) {
        let text = format!(
            "name = \"p\"\nwavenumber = {kappa:?}\nn = {n}\n\n[shape]\nkind = \"ellipse\"\na = 1.5\nb = 0.5\n\n[incident]\nkind = \"plane_wave\"\ndirection = {theta:?}\n"
        );
        let s = Scenario::from_toml(&text, "inline").unwrap();
        let again = Scenario::from_toml(&s.to_toml(), "round trip").unwrap();
        prop_assert_eq!(s, again);
    }
}
