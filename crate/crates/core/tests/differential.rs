//! Closed forms against the brute-force oracles, over seeded random inputs.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use spinor_pair::dynamics::{
    aligned_eigen_residual, aligned_eigenvectors, aligned_hamiltonian, evolve_full,
    local_propagator, su2_operator, LocalHamiltonian,
};
use spinor_pair::oracles::{oracle_matrix_exp, oracle_partial_trace};
use spinor_pair::sampling::{
    haar_state, random_angles, random_hamiltonian, random_unit_vector, rng_from_seed,
};
use spinor_pair::{
    angles_from_state, bloch_vector, concurrence, concurrence_angle, cross_check_gamma, decompose,
    reconstruct, reconstruct_componentwise, reduced_density, removed_phase,
    sample_fixed_concurrence, sample_haar, state_from_angles, PureState, Qubit, SampleSpec,
};

#[test]
fn partial_trace_matches_outer_product() {
    let mut rng = rng_from_seed(101);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let psi = haar_state(&mut rng);
        for q in Qubit::BOTH {
            let diff = reduced_density(&psi, q).max_abs_diff(&oracle_partial_trace(&psi, q));
            worst = worst.max(diff);
        }
    }
    assert!(worst < 1e-12, "worst partial-trace deviation {worst:e}");
}

#[test]
fn bloch_length_is_cos_chi() {
    let mut rng = rng_from_seed(102);
    for _ in 0..10_000 {
        let psi = haar_state(&mut rng);
        let chi = concurrence_angle(&psi);
        for q in Qubit::BOTH {
            let n = bloch_vector(&reduced_density(&psi, q)).norm();
            assert!(
                (n - chi.cos()).abs() < 1e-9,
                "|n| = {n}, cos chi = {}",
                chi.cos()
            );
        }
    }
}

#[test]
fn su2_matches_eigendecomposition() {
    let mut rng = rng_from_seed(103);
    let mut worst = 0.0f64;
    for k in 0..10_000 {
        let h = random_hamiltonian(&mut rng, 3.0, k % 2 == 0);
        let t = (k as f64 * 0.37) % 5.0 - 2.5;
        worst = worst.max(su2_operator(&h, t).max_abs_diff(&oracle_matrix_exp(&h, t, false)));
        worst = worst.max(local_propagator(&h, t).max_abs_diff(&oracle_matrix_exp(&h, t, true)));
        assert!(su2_operator(&h, t).unitarity_defect() < 1e-12);
    }
    assert!(worst < 1e-10, "worst exponential deviation {worst:e}");
}

#[test]
fn half_period_about_z() {
    // exp(-i sigma_z pi) is -I, and exp(-i sigma_z pi/2) is -i sigma_z
    let h = LocalHamiltonian::spin([0.0, 0.0, 1.0]);
    let u = oracle_matrix_exp(&h, PI, false);
    assert!(u.unitarity_defect() < 1e-12);
    assert!(u.max_abs_diff(&su2_operator(&h, PI)) < 1e-10);
    let minus_i_z = spinor_pair::Matrix2::PAULI_Z.scale(Complex64::new(0.0, -1.0));
    assert!(su2_operator(&h, PI / 2.0).max_abs_diff(&minus_i_z) < 1e-15);
}

#[test]
fn aligned_eigenvectors_for_random_directions() {
    let mut rng = rng_from_seed(104);
    for k in 0..2_000 {
        let n = random_unit_vector(&mut rng);
        let e = 0.1 + (k % 7) as f64;
        let h = aligned_hamiltonian(n, e).unwrap();
        assert!(aligned_eigen_residual(&h, n, e) < 1e-10);
        // the plus eigenvector points along n
        let theta = n[0].hypot(n[1]).atan2(n[2]);
        let phi = n[1].atan2(n[0]);
        let (plus, minus) = aligned_eigenvectors(theta, phi);
        let b = plus.bloch_vector();
        for i in 0..3 {
            assert!((b.0[i] - n[i]).abs() < 1e-12);
        }
        assert!(plus.inner(&minus).norm() < 1e-15);
    }
}

#[test]
fn forward_map_is_the_oracle_for_angle_recovery() {
    let mut rng = rng_from_seed(105);
    for _ in 0..10_000 {
        let x = random_angles(&mut rng, 0.05);
        let y = angles_from_state(&state_from_angles(&x)).unwrap();
        assert!((x.chi - y.chi).abs() < 1e-9);
        assert!((x.theta1 - y.theta1).abs() < 1e-9);
        assert!((x.theta2 - y.theta2).abs() < 1e-9);
        assert!(spinor_pair::linalg::circular_distance(x.phi1, y.phi1) < 1e-9);
        assert!(spinor_pair::linalg::circular_distance(x.phi2, y.phi2) < 1e-9);
        assert!(spinor_pair::linalg::circular_distance(x.gamma.unwrap(), y.gamma.unwrap()) < 1e-9);
    }
}

#[test]
fn closed_form_sine_agrees_inside_its_domain() {
    let mut rng = rng_from_seed(106);
    let mut checked = 0;
    for _ in 0..10_000 {
        let psi = haar_state(&mut rng);
        let Ok(check) = cross_check_gamma(&psi) else {
            continue;
        };
        let a = check.angles;
        if a.theta1.sin() > 0.05
            && a.theta2.sin() > 0.05
            && a.chi > 0.05
            && a.chi < FRAC_PI_2 - 0.05
        {
            assert!(check.discrepancy() < 1e-9, "{check:?}");
            checked += 1;
        }
    }
    assert!(checked > 5_000, "only {checked} states inside the domain");
}

#[test]
fn particle_exchange_keeps_gamma() {
    let mut rng = rng_from_seed(107);
    for _ in 0..5_000 {
        let x = random_angles(&mut rng, 0.05);
        let psi = state_from_angles(&x);
        let swapped = angles_from_state(&psi.swap_qubits()).unwrap();
        let g = x.gamma.unwrap();
        assert!(spinor_pair::linalg::circular_distance(g, swapped.gamma.unwrap()) < 1e-9);
        // the Bloch angles trade places
        assert!((swapped.theta1 - x.theta2).abs() < 1e-9);
        assert!((swapped.theta2 - x.theta1).abs() < 1e-9);
    }
}

#[test]
fn gamma_cancels_from_the_other_five() {
    let mut rng = rng_from_seed(108);
    for _ in 0..2_000 {
        let x = random_angles(&mut rng, 0.05);
        let base = angles_from_state(&state_from_angles(&x)).unwrap();
        for g in [-3.0, -1.0, 0.5, 2.9] {
            let mut y = x;
            y.gamma = Some(g);
            let other = angles_from_state(&state_from_angles(&y)).unwrap();
            assert!((other.chi - base.chi).abs() < 1e-12);
            assert!((other.theta1 - base.theta1).abs() < 1e-12);
            assert!((other.theta2 - base.theta2).abs() < 1e-12);
            assert!(spinor_pair::linalg::circular_distance(other.phi1, base.phi1) < 1e-12);
            assert!(spinor_pair::linalg::circular_distance(other.phi2, base.phi2) < 1e-12);
        }
    }
}

#[test]
fn decomposition_round_trip_with_injected_edges() {
    let mut states = sample_haar(&SampleSpec::haar(10_000, 109)).unwrap();
    for chi in [0.0, FRAC_PI_2] {
        states.extend(sample_fixed_concurrence(&SampleSpec::fixed(500, 110, chi)).unwrap());
    }
    states.push(PureState::singlet());
    states.push(PureState::singlet().with_phase(Complex64::new(0.0, 1.0)));
    for k in 0..4 {
        states.push(PureState::basis(k).with_phase(Complex64::new(-1.0, 0.0)));
    }
    for psi in &states[..11_000] {
        assert!((removed_phase(psi) - 1.0).norm() < 1e-12);
    }
    for psi in &states {
        let d = decompose(psi);
        let back = reconstruct(&d);
        // entangled states come back phase-fixed, which the samplers already are
        let expected = psi.with_phase(removed_phase(psi));
        assert!(back.max_abs_diff(&expected) < 1e-10, "{psi} -> {back}");
        assert!(reconstruct_componentwise(&d).max_abs_diff(&back) < 1e-12);
        for q in Qubit::BOTH {
            if let Some(n) = bloch_vector(&reduced_density(psi, q)).direction() {
                let s = d.spinor(q).bloch_vector();
                for i in 0..3 {
                    assert!((s.0[i] - n[i]).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn haar_mean_concurrence_matches_independent_generator() {
    // Band from a separate 10^4-sample run with a different generator
    // (numpy PCG64, complex Gaussian amplitudes): mean 3 pi / 16 within five
    // standard errors.
    let states = sample_haar(&SampleSpec::haar(10_000, 2024)).unwrap();
    let mean = states.iter().map(concurrence).sum::<f64>() / states.len() as f64;
    assert!((0.5775..=0.6005).contains(&mean), "mean concurrence {mean}");
}

#[test]
fn fixed_concurrence_sampler() {
    for (chi, c) in [
        (0.0, 0.0),
        (0.7, 0.7f64.sin()),
        (FRAC_PI_4, FRAC_PI_4.sin()),
        (FRAC_PI_2, 1.0),
    ] {
        for psi in sample_fixed_concurrence(&SampleSpec::fixed(1_000, 111, chi)).unwrap() {
            assert!((concurrence(&psi) - c).abs() < 1e-12);
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn full_backend_scalar_part_is_a_global_phase() {
    let mut rng = rng_from_seed(112);
    let psi = haar_state(&mut rng);
    let (e, t) = (0.8, 1.3);
    let out = evolve_full(
        &psi,
        &LocalHamiltonian::new(e, [0.0; 3]),
        &LocalHamiltonian::ZERO,
        t,
    );
    assert!(out.max_abs_diff(&psi.with_phase(Complex64::from_polar(1.0, -e * t))) < 1e-15);
}
