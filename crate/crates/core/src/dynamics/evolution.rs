//! Two interchangeable evolution backends for local Hamiltonians.
//!
//! * the full backend applies `U1 (x) U2` to the four amplitudes;
//! * the separable backend evolves each local spinor on its own with the
//!   spin part of its Hamiltonian and books the spin-independent energy in a
//!   [`PhaseLedger`].
//!
//! Both give the same amplitudes, because every `exp(-i (v . sigma) t)`
//! commutes with the parity map and the scalar parts only contribute a
//! global phase.

use num_complex::Complex64;

use crate::angles::{angles_or_separable, AngleSet};
use crate::decomposition::{decompose, reconstruct, removed_phase, SpinorDecomposition};
use crate::dynamics::hamiltonian::{local_propagator, su2_operator, LocalHamiltonian};
use crate::linalg::apply4;
use crate::spinor::LocalSpinor;
use crate::state::{concurrence, PureState};
use crate::Qubit;

/// Accumulated spin-independent phases `beta1`, `beta2`.
///
/// The full state is `e^{-i (beta1 + beta2)} reconstruct(decomposition)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseLedger {
    pub beta1: f64,
    pub beta2: f64,
}

impl PhaseLedger {
    pub fn new(beta1: f64, beta2: f64) -> Self {
        PhaseLedger { beta1, beta2 }
    }

    pub fn beta(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::First => self.beta1,
            Qubit::Second => self.beta2,
        }
    }

    /// Adds `phase` to the given qubit's entry.
    pub fn advance(&mut self, qubit: Qubit, phase: f64) {
        match qubit {
            Qubit::First => self.beta1 += phase,
            Qubit::Second => self.beta2 += phase,
        }
    }

    /// `e^{-i (beta1 + beta2)}`.
    pub fn phase_factor(&self) -> Complex64 {
        // two separate rotations keep large betas from losing digits in the sum
        Complex64::from_polar(1.0, -self.beta1) * Complex64::from_polar(1.0, -self.beta2)
    }

    /// Reattaches the booked phase to a reconstructed state.
    pub fn restore(&self, psi: &PureState) -> PureState {
        psi.with_phase(self.phase_factor())
    }
}

/// Decomposes `psi` and records the phase removed by canonicalization in the
/// ledger (as `beta1`), so that `ledger.restore(reconstruct(d)) == psi`.
pub fn separate(psi: &PureState) -> (SpinorDecomposition, PhaseLedger) {
    let removed = removed_phase(psi);
    (decompose(psi), PhaseLedger::new(removed.arg(), 0.0))
}

/// Full state from a decomposition and its ledger.
pub fn recombine(d: &SpinorDecomposition, ledger: &PhaseLedger) -> PureState {
    ledger.restore(&reconstruct(d))
}

/// `exp(-i (v . sigma) t) s`, with `h_i t` added to the qubit's ledger entry.
pub fn evolve_spinor(
    s: &LocalSpinor,
    h: &LocalHamiltonian,
    t: f64,
    ledger: PhaseLedger,
    qubit: Qubit,
) -> (LocalSpinor, PhaseLedger) {
    let mut ledger = ledger;
    ledger.advance(qubit, h.h_i * t);
    (s.transform(&su2_operator(h, t)), ledger)
}

/// `(U1 (x) U2) psi` with the complete local propagators, scalar parts
/// included. This is the reference backend.
pub fn evolve_full(
    psi: &PureState,
    h1: &LocalHamiltonian,
    h2: &LocalHamiltonian,
    t: f64,
) -> PureState {
    let u = local_propagator(h1, t).kron(&local_propagator(h2, t));
    PureState::from_unitary_image(apply4(&u, &psi.amplitudes()))
}

/// Evolves both spinors for time `t`. `chi` is untouched.
pub fn evolve_separable(
    d: &SpinorDecomposition,
    ledger: PhaseLedger,
    h1: &LocalHamiltonian,
    h2: &LocalHamiltonian,
    t: f64,
) -> (SpinorDecomposition, PhaseLedger) {
    let (spinor1, ledger) = evolve_spinor(&d.spinor1, h1, t, ledger, Qubit::First);
    let (spinor2, ledger) = evolve_spinor(&d.spinor2, h2, t, ledger, Qubit::Second);
    (
        SpinorDecomposition {
            chi: d.chi,
            spinor1,
            spinor2,
        },
        ledger,
    )
}

/// One piece of a piecewise-constant schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub hamiltonian: LocalHamiltonian,
    pub duration: f64,
}

/// A piecewise-constant Hamiltonian for one qubit. After its last segment
/// the qubit is left alone.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub segments: Vec<Segment>,
}

impl Schedule {
    pub fn new(segments: Vec<Segment>) -> Self {
        Schedule { segments }
    }

    pub fn constant(hamiltonian: LocalHamiltonian, duration: f64) -> Self {
        Schedule {
            segments: vec![Segment {
                hamiltonian,
                duration,
            }],
        }
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Runs one qubit's spinor through its own schedule.
pub fn evolve_spinor_schedule(
    s: &LocalSpinor,
    schedule: &Schedule,
    ledger: PhaseLedger,
    qubit: Qubit,
) -> (LocalSpinor, PhaseLedger) {
    schedule
        .segments
        .iter()
        .fold((*s, ledger), |(s, ledger), seg| {
            evolve_spinor(&s, &seg.hamiltonian, seg.duration, ledger, qubit)
        })
}

/// Separable backend over two independent schedules.
pub fn evolve_separable_schedule(
    d: &SpinorDecomposition,
    ledger: PhaseLedger,
    schedule1: &Schedule,
    schedule2: &Schedule,
) -> (SpinorDecomposition, PhaseLedger) {
    let (spinor1, ledger) = evolve_spinor_schedule(&d.spinor1, schedule1, ledger, Qubit::First);
    let (spinor2, ledger) = evolve_spinor_schedule(&d.spinor2, schedule2, ledger, Qubit::Second);
    (
        SpinorDecomposition {
            chi: d.chi,
            spinor1,
            spinor2,
        },
        ledger,
    )
}

/// A point on the merged timeline of the full backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub time: f64,
    pub concurrence: f64,
    /// `None` at maximal entanglement, where the Bloch angles are undefined.
    pub angles: Option<AngleSet>,
}

/// Full backend over two schedules.
///
/// The two step grids are merged, so every interval evolves under
/// `H1 (x) I + I (x) H2` with whichever segments are active on each side.
/// With `trace` set, a [`TracePoint`] is recorded at `t = 0` and after every
/// merged interval.
pub fn evolve_full_schedule(
    psi: &PureState,
    schedule1: &Schedule,
    schedule2: &Schedule,
    mut trace: Option<&mut Vec<TracePoint>>,
) -> PureState {
    let mut state = *psi;
    let mut time = 0.0;
    let record = |state: &PureState, time: f64, trace: &mut Option<&mut Vec<TracePoint>>| {
        if let Some(points) = trace.as_deref_mut() {
            points.push(TracePoint {
                time,
                concurrence: concurrence(state),
                angles: angles_or_separable(state).ok(),
            });
        }
    };
    record(&state, time, &mut trace);

    let (mut i1, mut i2) = (0, 0);
    let mut left1 = schedule1.segments.first().map_or(0.0, |s| s.duration);
    let mut left2 = schedule2.segments.first().map_or(0.0, |s| s.duration);
    while i1 < schedule1.segments.len() || i2 < schedule2.segments.len() {
        let active1 = i1 < schedule1.segments.len();
        let active2 = i2 < schedule2.segments.len();
        let dt = match (active1, active2) {
            (true, true) => left1.min(left2),
            (true, false) => left1,
            (false, true) => left2,
            (false, false) => unreachable!(),
        };
        let h1 = if active1 {
            schedule1.segments[i1].hamiltonian
        } else {
            LocalHamiltonian::ZERO
        };
        let h2 = if active2 {
            schedule2.segments[i2].hamiltonian
        } else {
            LocalHamiltonian::ZERO
        };
        if dt > 0.0 {
            state = evolve_full(&state, &h1, &h2, dt);
            time += dt;
            record(&state, time, &mut trace);
        }
        if active1 {
            left1 -= dt;
            if left1 <= 0.0 {
                i1 += 1;
                left1 = schedule1.segments.get(i1).map_or(0.0, |s| s.duration);
            }
        }
        if active2 {
            left2 -= dt;
            if left2 <= 0.0 {
                i2 += 1;
                left2 = schedule2.segments.get(i2).map_or(0.0, |s| s.duration);
            }
        }
    }
    state
}

/// Outcome of running both backends from the same start.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionReport {
    pub final_state_full: PureState,
    pub final_state_separable: PureState,
    /// Infinity norm of the componentwise difference. No phase alignment is
    /// applied since the ledger tracks every phase.
    pub max_component_deviation: f64,
    pub final_decomposition: SpinorDecomposition,
    pub ledger: PhaseLedger,
    pub trace: Option<Vec<TracePoint>>,
}

/// Evolves `psi` with both backends and compares the results.
pub fn compare_backends(
    psi: &PureState,
    schedule1: &Schedule,
    schedule2: &Schedule,
    record_trace: bool,
) -> EvolutionReport {
    let mut points = Vec::new();
    let final_state_full = evolve_full_schedule(
        psi,
        schedule1,
        schedule2,
        record_trace.then_some(&mut points),
    );
    let (d, ledger) = separate(psi);
    let (final_decomposition, ledger) = evolve_separable_schedule(&d, ledger, schedule1, schedule2);
    let final_state_separable = recombine(&final_decomposition, &ledger);
    EvolutionReport {
        max_component_deviation: final_state_full.max_abs_diff(&final_state_separable),
        final_state_full,
        final_state_separable,
        final_decomposition,
        ledger,
        trace: record_trace.then_some(points),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{state_from_angles, AngleSet};
    use crate::state::fix_global_phase;
    use std::f64::consts::{FRAC_1_SQRT_2 as H, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_state() -> PureState {
        state_from_angles(&AngleSet::new(0.9, 0.7, 2.2, 2.0, -1.4, 0.6))
    }

    #[test]
    fn idle_evolution_changes_nothing() {
        let psi = sample_state();
        let zero = LocalHamiltonian::ZERO;
        assert!(evolve_full(&psi, &zero, &zero, 3.0).max_abs_diff(&psi) < 1e-15);
        let (d, ledger) = separate(&psi);
        let (d2, ledger2) = evolve_separable(&d, ledger, &zero, &zero, 3.0);
        assert_eq!(d, d2);
        assert_eq!(ledger, ledger2);
    }

    #[test]
    fn scalar_energy_is_a_global_phase() {
        let psi = sample_state();
        let (e, t) = (0.8, 1.7);
        let out = evolve_full(
            &psi,
            &LocalHamiltonian::new(e, [0.0; 3]),
            &LocalHamiltonian::ZERO,
            t,
        );
        assert!(out.max_abs_diff(&psi.with_phase(Complex64::from_polar(1.0, -e * t))) < 1e-15);
    }

    #[test]
    fn scalar_energy_only_moves_the_ledger() {
        let s = LocalSpinor::normalized(c(0.3, 0.1), c(-0.4, 0.8)).unwrap();
        let (out, ledger) = evolve_spinor(
            &s,
            &LocalHamiltonian::new(1.5, [0.0; 3]),
            2.0,
            PhaseLedger::default(),
            Qubit::First,
        );
        assert_eq!(out, s);
        assert_eq!(ledger.beta1, 3.0);
        assert_eq!(ledger.beta2, 0.0);
    }

    #[test]
    fn singlet_quarter_turn_about_z() {
        // a pi/2 rotation angle about z on qubit 1 (E t = pi/2) shifts alpha1
        // by pi up to the SU(2) sign convention; the full backend is the judge
        let psi = PureState::singlet();
        let h = LocalHamiltonian::spin([0.0, 0.0, 1.0]);
        let t = FRAC_PI_2;
        let report = compare_backends(&psi, &Schedule::constant(h, t), &Schedule::default(), false);
        assert!(report.max_component_deviation < 1e-15);
        // exp(-i sigma_z pi/2) = -i sigma_z sends the singlet to
        // -i (|01> + |10>)/sqrt 2
        let expected = PureState::new([c(0.0, 0.0), c(0.0, -H), c(0.0, -H), c(0.0, 0.0)]).unwrap();
        assert!(report.final_state_full.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn ledger_restores_the_input_phase() {
        let psi = sample_state().with_phase(Complex64::from_polar(1.0, 2.4));
        let (d, ledger) = separate(&psi);
        assert!(recombine(&d, &ledger).max_abs_diff(&psi) < 1e-15);
        assert!(reconstruct(&d).max_abs_diff(&fix_global_phase(&psi)) < 1e-15);
    }

    #[test]
    fn merged_timeline_with_uneven_grids() {
        let psi = sample_state();
        let s1 = Schedule::new(vec![
            Segment {
                hamiltonian: LocalHamiltonian::new(0.4, [1.0, 0.0, 0.5]),
                duration: 0.1,
            },
            Segment {
                hamiltonian: LocalHamiltonian::new(-1.0, [0.0, -2.0, 0.3]),
                duration: 0.25,
            },
        ]);
        let s2 = Schedule::new(vec![Segment {
            hamiltonian: LocalHamiltonian::new(0.7, [0.2, 0.9, -1.1]),
            duration: 0.6,
        }]);
        let report = compare_backends(&psi, &s1, &s2, true);
        assert!(report.max_component_deviation < 1e-14);
        let trace = report.trace.unwrap();
        assert_eq!(trace.len(), 4);
        assert!((trace.last().unwrap().time - 0.6).abs() < 1e-15);
        for p in &trace {
            assert!((p.concurrence - concurrence(&psi)).abs() < 1e-12);
        }
    }
}
