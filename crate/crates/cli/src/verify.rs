//! Property suites behind `verify`.
//!
//! Trial `k` of a run with master seed `s` draws everything from
//! `ChaCha8Rng::seed_from_u64(s + k)`, so results do not depend on how the
//! trials are spread over threads.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use clap::ValueEnum;
use rand::Rng;
use spinor_pair::dynamics::{
    aligned_eigen_residual, aligned_hamiltonian, compare_backends, compound_rotation_check,
    evolve_full, recompose_from_eigenspaces, recurrence_drift, su2_operator, Handedness,
    LocalHamiltonian, Schedule, Segment,
};
use spinor_pair::linalg::circular_distance;
use spinor_pair::measurement::born_decomposed;
use spinor_pair::oracles::{oracle_matrix_exp, oracle_partial_trace};
use spinor_pair::sampling::{
    haar_state, random_angles, random_hamiltonian, random_spinor, rng_from_seed,
};
use spinor_pair::{
    angles_from_state, bloch_vector, born_full, born_local, born_local_forms, concurrence,
    concurrence_angle, cross_check_gamma, decompose, reconstruct, reconstruct_componentwise,
    reduced_density, sample_fixed_concurrence, state_from_angles, AngleSet, MeasurementDirection,
    PureState, Qubit, SampleSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Roundtrip,
    Dynamics,
    Born,
    Appendix,
    All,
}

impl Suite {
    pub fn parts(self) -> &'static [Suite] {
        match self {
            Suite::All => &[
                Suite::Roundtrip,
                Suite::Dynamics,
                Suite::Born,
                Suite::Appendix,
            ],
            Suite::Roundtrip => &[Suite::Roundtrip],
            Suite::Dynamics => &[Suite::Dynamics],
            Suite::Born => &[Suite::Born],
            Suite::Appendix => &[Suite::Appendix],
        }
    }

    fn trial(self, index: usize, seed: u64) -> Vec<Measurement> {
        let mut m = Vec::new();
        match self {
            Suite::Roundtrip => roundtrip_trial(index, seed, &mut m),
            Suite::Dynamics => dynamics_trial(index, seed, &mut m),
            Suite::Born => born_trial(index, seed, &mut m),
            Suite::Appendix => appendix_trial(index, seed, &mut m),
            Suite::All => unreachable!("expanded by parts()"),
        }
        m
    }
}

/// One observed deviation. Errors are recorded as `f64::INFINITY`.
#[derive(Debug, Clone, Copy)]
struct Measurement {
    name: &'static str,
    tolerance: f64,
    value: f64,
}

fn push(m: &mut Vec<Measurement>, name: &'static str, tolerance: f64, value: f64) {
    m.push(Measurement {
        name,
        tolerance,
        value,
    });
}

fn push_result(
    m: &mut Vec<Measurement>,
    name: &'static str,
    tolerance: f64,
    value: Result<f64, spinor_pair::Error>,
) {
    push(m, name, tolerance, value.unwrap_or(f64::INFINITY));
}

/// Worst case of one property over all trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub worst: f64,
    pub trials: usize,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.worst < self.tolerance
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<34} worst={:<10.3e} tol={:.0e} trials={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tolerance,
            self.trials
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub results: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let failed = self.results.iter().filter(|r| !r.passed()).count();
        out.push_str(&format!(
            "{} of {} properties passed\n",
            self.results.len() - failed,
            self.results.len()
        ));
        out
    }
}

fn merge(into: &mut Vec<PropertyResult>, measurements: Vec<Measurement>) {
    for m in measurements {
        // NaN counts as a failure
        let value = if m.value.is_nan() {
            f64::INFINITY
        } else {
            m.value
        };
        match into.iter_mut().find(|r| r.name == m.name) {
            Some(r) => {
                r.worst = r.worst.max(value);
                r.trials += 1;
            }
            None => into.push(PropertyResult {
                name: m.name,
                tolerance: m.tolerance,
                worst: value,
                trials: 1,
            }),
        }
    }
}

fn merge_results(into: &mut Vec<PropertyResult>, other: Vec<PropertyResult>) {
    for r in other {
        match into.iter_mut().find(|x| x.name == r.name) {
            Some(x) => {
                x.worst = x.worst.max(r.worst);
                x.trials += r.trials;
            }
            None => into.push(r),
        }
    }
}

/// Runs `trials` trials of `suite` on up to `threads` worker threads.
pub fn run_suite(suite: Suite, trials: usize, seed: u64, threads: usize) -> VerifyReport {
    let mut results = Vec::new();
    for &part in suite.parts() {
        let threads = threads.clamp(1, trials.max(1));
        let chunk = trials.div_ceil(threads);
        let partials: Vec<Vec<PropertyResult>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        for index in t * chunk..((t + 1) * chunk).min(trials) {
                            merge(
                                &mut local,
                                part.trial(index, seed.wrapping_add(index as u64)),
                            );
                        }
                        local
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("trial panicked"))
                .collect()
        });
        let mut suite_results = Vec::new();
        for p in partials {
            merge_results(&mut suite_results, p);
        }
        // keep the declaration order of each suite
        let order: Vec<&'static str> = part.trial(0, seed).iter().map(|m| m.name).collect();
        suite_results.sort_by_key(|r| order.iter().position(|n| *n == r.name));
        results.extend(suite_results);
    }
    VerifyReport { results }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn random_schedule<R: Rng + ?Sized>(rng: &mut R, steps: usize, with_scalar: bool) -> Schedule {
    Schedule::new(
        (0..steps)
            .map(|_| Segment {
                hamiltonian: random_hamiltonian(rng, 2.0, with_scalar),
                duration: rng.random_range(0.01..0.5),
            })
            .collect(),
    )
}

/// Largest difference between two angle sets; `phi` and `gamma` compared
/// on the circle.
pub fn angle_error(x: &AngleSet, y: &AngleSet) -> f64 {
    let gamma = match (x.gamma, y.gamma) {
        (Some(a), Some(b)) => circular_distance(a, b),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    };
    [
        (x.chi - y.chi).abs(),
        (x.theta1 - y.theta1).abs(),
        circular_distance(x.phi1, y.phi1),
        (x.theta2 - y.theta2).abs(),
        circular_distance(x.phi2, y.phi2),
        gamma,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

fn five_angle_error(x: &AngleSet, y: &AngleSet) -> f64 {
    angle_error(
        &AngleSet { gamma: None, ..*x },
        &AngleSet { gamma: None, ..*y },
    )
}

pub const FIXED_CHI_LEVELS: [f64; 4] = [0.0, 0.3, FRAC_PI_4, FRAC_PI_2];

fn roundtrip_trial(index: usize, seed: u64, m: &mut Vec<Measurement>) {
    let mut rng = rng_from_seed(seed);
    let psi = haar_state(&mut rng);
    let d = decompose(&psi);
    push(
        m,
        "roundtrip.decompose_haar",
        1e-10,
        reconstruct(&d).max_abs_diff(&psi),
    );
    push(
        m,
        "roundtrip.reconstruction_paths",
        1e-12,
        reconstruct_componentwise(&d).max_abs_diff(&reconstruct(&d)),
    );

    let chi = FIXED_CHI_LEVELS[index % FIXED_CHI_LEVELS.len()];
    let fixed = sample_fixed_concurrence(&SampleSpec::fixed(1, seed, chi)).expect("valid spec")[0];
    push(
        m,
        "roundtrip.decompose_fixed_chi",
        1e-10,
        reconstruct(&decompose(&fixed)).max_abs_diff(&fixed),
    );

    let x = random_angles(&mut rng, 0.05);
    let y = state_from_angles(&x);
    push_result(
        m,
        "roundtrip.angles",
        1e-9,
        angles_from_state(&y).map(|z| angle_error(&x, &z)),
    );
    push_result(
        m,
        "roundtrip.closed_form_sine",
        1e-9,
        cross_check_gamma(&y).map(|c| c.discrepancy()),
    );

    let mut cancel = 0.0f64;
    for g in [-2.5, 0.4, 3.0] {
        let other = AngleSet {
            gamma: Some(g),
            ..x
        };
        let err = match (
            angles_from_state(&y),
            angles_from_state(&state_from_angles(&other)),
        ) {
            (Ok(a), Ok(b)) => five_angle_error(&a, &b),
            _ => f64::INFINITY,
        };
        cancel = cancel.max(err);
    }
    push(m, "roundtrip.gamma_cancels", 1e-12, cancel);

    let exchanged = match (angles_from_state(&y), angles_from_state(&y.swap_qubits())) {
        (Ok(a), Ok(b)) => {
            circular_distance(a.gamma.unwrap_or(f64::NAN), b.gamma.unwrap_or(f64::NAN))
        }
        _ => f64::INFINITY,
    };
    push(m, "roundtrip.exchange_keeps_gamma", 1e-9, exchanged);

    let chi = concurrence_angle(&psi);
    let mut length = 0.0f64;
    let mut trace = 0.0f64;
    for q in Qubit::BOTH {
        let rho = reduced_density(&psi, q);
        length = length.max((bloch_vector(&rho).norm() - chi.cos()).abs());
        trace = trace.max(rho.max_abs_diff(&oracle_partial_trace(&psi, q)));
    }
    push(m, "roundtrip.bloch_length", 1e-9, length);
    push(m, "roundtrip.partial_trace_oracle", 1e-12, trace);
}

fn dynamics_trial(index: usize, seed: u64, m: &mut Vec<Measurement>) {
    let mut rng = rng_from_seed(seed);
    let psi = haar_state(&mut rng);
    let with_scalar = index % 2 == 1;
    let s1 = random_schedule(&mut rng, 10, with_scalar);
    let s2 = random_schedule(&mut rng, 10, with_scalar);
    let report = compare_backends(&psi, &s1, &s2, true);
    push(
        m,
        "dynamics.backends_agree",
        1e-9,
        report.max_component_deviation,
    );

    let c0 = concurrence(&psi);
    let mut dc = (concurrence(&report.final_state_separable) - c0).abs();
    for p in report.trace.iter().flatten() {
        dc = dc.max((p.concurrence - c0).abs());
    }
    push(m, "dynamics.concurrence_invariant", 1e-12, dc);
    push(
        m,
        "dynamics.unitarity",
        1e-12,
        (report.final_state_full.norm_sqr() - 1.0).abs(),
    );

    let h = random_hamiltonian(&mut rng, 3.0, true);
    let t = rng.random_range(-3.0..3.0);
    push(
        m,
        "dynamics.su2_vs_eigendecomposition",
        1e-10,
        su2_operator(&h, t).max_abs_diff(&oracle_matrix_exp(&h, t, false)),
    );
    let s = random_spinor(&mut rng);
    let u = su2_operator(&h, t);
    push(
        m,
        "dynamics.parity_commutes",
        1e-12,
        s.parity()
            .transform(&u)
            .max_abs_diff(&s.transform(&u).parity()),
    );

    let spin_only = evolve_full(
        &psi,
        &LocalHamiltonian::spin(h.v),
        &random_hamiltonian(&mut rng, 2.0, false),
        t,
    );
    push(
        m,
        "dynamics.determinant_stays_real",
        1e-12,
        spin_only.determinant().im.abs(),
    );
}

fn born_trial(index: usize, seed: u64, m: &mut Vec<Measurement>) {
    let mut rng = rng_from_seed(seed);
    let psi = haar_state(&mut rng);
    let qubit = if index.is_multiple_of(2) {
        Qubit::First
    } else {
        Qubit::Second
    };
    let dir = MeasurementDirection::new(random_spinor(&mut rng));
    let d = decompose(&psi);
    let full = born_full(&psi, qubit, &dir);
    push(
        m,
        "born.variant_equals_standard",
        1e-12,
        (born_decomposed(&d, qubit, &dir) - full).abs(),
    );
    let (two_term, reduced) = born_local_forms(d.chi, d.spinor(qubit), &dir);
    push(m, "born.two_forms_agree", 1e-12, (two_term - reduced).abs());
    push(
        m,
        "born.antipodes_sum_to_one",
        1e-12,
        (full + born_full(&psi, qubit, &dir.antipode()) - 1.0).abs(),
    );

    let maximal =
        sample_fixed_concurrence(&SampleSpec::fixed(1, seed, FRAC_PI_2)).expect("valid spec")[0];
    let dm = decompose(&maximal);
    let half = (born_full(&maximal, qubit, &dir) - 0.5)
        .abs()
        .max((born_local(dm.chi, dm.spinor(qubit), &dir) - 0.5).abs());
    push(m, "born.maximal_is_half", 1e-12, half);

    let s = random_spinor(&mut rng);
    let ordinary = dir.overlap_sqr(&s);
    let product = reconstruct(&spinor_pair::SpinorDecomposition::new(
        0.0,
        s,
        random_spinor(&mut rng),
    ));
    let sep = (born_local(0.0, &s, &dir) - ordinary)
        .abs()
        .max((born_full(&product, Qubit::First, &dir) - ordinary).abs());
    push(m, "born.separable_is_ordinary", 1e-12, sep);
}

/// Energy and times used by the compounding checks.
pub const COMPOUND_ENERGY: f64 = 1.0;
pub const COMPOUND_SAME_T: f64 = 0.1;
pub const COMPOUND_OPPOSITE_T: f64 = 0.3;

fn appendix_trial(index: usize, seed: u64, m: &mut Vec<Measurement>) {
    let mut rng = rng_from_seed(seed);
    let x = random_angles(&mut rng, 0.05);
    let psi: PureState = state_from_angles(&x);
    let qubit = if index.is_multiple_of(2) {
        Qubit::First
    } else {
        Qubit::Second
    };
    let energy = rng.random_range(0.2..2.0);
    let grid: Vec<f64> = (0..50).map(|k| k as f64 / 49.0).collect();
    match recurrence_drift(&psi, qubit, energy, &grid) {
        Ok(fit) => {
            push(m, "appendix.gamma_linear_residual", 1e-8, fit.residual);
            push(
                m,
                "appendix.other_angles_constant",
                1e-8,
                fit.max_angle_drift,
            );
            push(
                m,
                "appendix.slope_is_2E",
                1e-6,
                (fit.slope.abs() - 2.0 * energy).abs(),
            );
            // sign convention of this implementation: gamma decreases
            push(
                m,
                "appendix.slope_sign_negative",
                0.5,
                if fit.slope < 0.0 { 0.0 } else { 1.0 },
            );
        }
        Err(_) => {
            for name in [
                "appendix.gamma_linear_residual",
                "appendix.other_angles_constant",
                "appendix.slope_is_2E",
                "appendix.slope_sign_negative",
            ] {
                push(m, name, 1e-8, f64::INFINITY);
            }
        }
    }
    let e = COMPOUND_ENERGY;
    push_result(
        m,
        "appendix.opposite_handed_cancels",
        1e-8,
        compound_rotation_check(&psi, e, e, COMPOUND_OPPOSITE_T, Handedness::Opposite)
            .map(f64::abs),
    );
    push_result(
        m,
        "appendix.same_handed_compounds",
        1e-6,
        compound_rotation_check(&psi, e, e, COMPOUND_SAME_T, Handedness::Same)
            .map(|dg| (dg.abs() - 2.0 * (e + e) * COMPOUND_SAME_T).abs()),
    );
    let rebuilt = recompose_from_eigenspaces(&x);
    push(
        m,
        "appendix.eigenspace_completeness",
        1e-12,
        spinor_pair::linalg::max_abs_diff(&rebuilt, &psi.amplitudes()),
    );
    let n = bloch_vector(&reduced_density(&psi, qubit))
        .direction()
        .unwrap_or([0.0, 0.0, 1.0]);
    push_result(
        m,
        "appendix.aligned_eigenvectors",
        1e-10,
        aligned_hamiltonian(n, energy).map(|h| aligned_eigen_residual(&h, n, energy)),
    );
}
