use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use spinor_pair::dynamics::{
    compare_backends, evolve_full, su2_operator, LocalHamiltonian, Schedule, Segment,
};
use spinor_pair::measurement::born_decomposed;
use spinor_pair::{
    angles_from_state, born_full, born_local_forms, concurrence, decompose, fix_global_phase,
    reconstruct, reconstruct_componentwise, removed_phase, spinor_from_angles, state_from_angles,
    AngleSet, LocalSpinor, MeasurementDirection, PureState, Qubit,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state() -> impl Strategy<Value = PureState> {
    [complex(), complex(), complex(), complex()]
        .prop_filter_map("zero vector", |amps| PureState::normalized(amps).ok())
}

fn spinor() -> impl Strategy<Value = LocalSpinor> {
    (complex(), complex())
        .prop_filter_map("zero spinor", |(u, l)| LocalSpinor::normalized(u, l).ok())
}

fn direction() -> impl Strategy<Value = MeasurementDirection> {
    spinor().prop_map(MeasurementDirection::new)
}

fn hamiltonian() -> impl Strategy<Value = LocalHamiltonian> {
    (-2.0..2.0f64, [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64])
        .prop_map(|(h_i, v)| LocalHamiltonian::new(h_i, v))
}

fn schedule() -> impl Strategy<Value = Schedule> {
    prop::collection::vec((hamiltonian(), 0.01..1.0f64), 0..6).prop_map(|pieces| {
        Schedule::new(
            pieces
                .into_iter()
                .map(|(hamiltonian, duration)| Segment {
                    hamiltonian,
                    duration,
                })
                .collect(),
        )
    })
}

fn interior_angles() -> impl Strategy<Value = AngleSet> {
    (
        0.05..FRAC_PI_2 - 0.05,
        0.05..PI - 0.05,
        -PI + 1e-3..PI,
        0.05..PI - 0.05,
        -PI + 1e-3..PI,
        -PI + 1e-3..PI,
    )
        .prop_map(|(chi, t1, p1, t2, p2, g)| AngleSet::new(chi, t1, p1, t2, p2, g))
}

fn angle_gap(x: f64, y: f64) -> f64 {
    spinor_pair::linalg::circular_distance(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn decompose_then_reconstruct_is_exact(psi in state()) {
        let d = decompose(&psi);
        let expected = psi.with_phase(removed_phase(&psi));
        prop_assert!(reconstruct(&d).max_abs_diff(&expected) < 1e-10);
        let fixed = fix_global_phase(&psi);
        prop_assert!(reconstruct(&decompose(&fixed)).max_abs_diff(&fixed) < 1e-10);
        prop_assert!(reconstruct_componentwise(&d).max_abs_diff(&reconstruct(&d)) < 1e-12);
        prop_assert!((d.chi.sin() - concurrence(&psi)).abs() < 1e-12);
    }

    #[test]
    fn phase_fix_post_condition(psi in state(), lambda in -PI..PI) {
        let fixed = fix_global_phase(&psi.with_phase(Complex64::from_polar(1.0, lambda)));
        let det = fixed.determinant();
        if det.norm() >= 1e-9 {
            prop_assert!(det.im.abs() < 1e-15 && det.re >= 0.0);
        }
        // same ray
        prop_assert!((fixed.inner(&psi).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angles_round_trip(x in interior_angles()) {
        let y = angles_from_state(&state_from_angles(&x)).unwrap();
        prop_assert!((x.chi - y.chi).abs() < 1e-9);
        prop_assert!((x.theta1 - y.theta1).abs() < 1e-9);
        prop_assert!((x.theta2 - y.theta2).abs() < 1e-9);
        prop_assert!(angle_gap(x.phi1, y.phi1) < 1e-9);
        prop_assert!(angle_gap(x.phi2, y.phi2) < 1e-9);
        prop_assert!(angle_gap(x.gamma.unwrap(), y.gamma.unwrap()) < 1e-9);
    }

    #[test]
    fn forward_map_has_real_nonnegative_determinant(x in interior_angles()) {
        let psi = state_from_angles(&x);
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        let det = psi.determinant();
        prop_assert!(det.im.abs() < 1e-15);
        prop_assert!((det.re - 0.5 * x.chi.sin()).abs() < 1e-15);
    }

    #[test]
    fn parity_identities(s in spinor()) {
        let p = s.parity();
        prop_assert!(s.inner(&p).norm() < 1e-12);
        let pp = p.parity();
        prop_assert!(pp.max_abs_diff(&s.with_phase(Complex64::new(-1.0, 0.0))) < 1e-15);
        let (b, bp) = (s.bloch_vector(), p.bloch_vector());
        for i in 0..3 {
            prop_assert!((b.0[i] + bp.0[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_is_recovered(theta in 0.01..PI - 0.01, phi in -PI + 1e-3..PI, alpha in -2.0 * PI + 1e-3..2.0 * PI) {
        let s = spinor_from_angles(theta, phi, alpha);
        prop_assert!((s.alpha() - alpha).abs() < 1e-9);
    }

    #[test]
    fn born_rule_forms_agree(psi in state(), dir in direction()) {
        let d = decompose(&psi);
        for q in Qubit::BOTH {
            let full = born_full(&psi, q, &dir);
            let (two_term, reduced) = born_local_forms(d.chi, d.spinor(q), &dir);
            prop_assert!((two_term - reduced).abs() < 1e-12);
            prop_assert!((born_decomposed(&d, q, &dir) - full).abs() < 1e-12);
            let flip = born_full(&psi, q, &dir.antipode());
            prop_assert!((full + flip - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn backends_agree(psi in state(), s1 in schedule(), s2 in schedule()) {
        let report = compare_backends(&psi, &s1, &s2, false);
        prop_assert!(report.max_component_deviation < 1e-9);
        prop_assert!((concurrence(&report.final_state_full) - concurrence(&psi)).abs() < 1e-12);
        prop_assert!((report.final_state_full.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_is_reversible(psi in state(), h1 in hamiltonian(), h2 in hamiltonian(), t in -3.0..3.0f64) {
        let there = evolve_full(&psi, &h1, &h2, t);
        let back = evolve_full(&there, &h1, &h2, -t);
        prop_assert!(back.max_abs_diff(&psi) < 1e-12);
    }

    #[test]
    fn su2_is_unitary_with_unit_determinant(h in hamiltonian(), t in -10.0..10.0f64) {
        let u = su2_operator(&h, t);
        prop_assert!(u.unitarity_defect() < 1e-12);
        let det = u.0[0][0] * u.0[1][1] - u.0[0][1] * u.0[1][0];
        prop_assert!((det - 1.0).norm() < 1e-12);
    }
}
