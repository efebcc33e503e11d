//! Phase-fixed Schmidt decomposition into a concurrence angle and two local
//! spinors:
//!
//! ```text
//! |psi> = cos(chi/2) |s1> (x) |s2> + sin(chi/2) P|s1> (x) P|s2>
//! ```
//!
//! with `P (A, B) = (B*, -A*)`. Because `det [s, Ps] = -1` for every unit
//! spinor, the right-hand side always has `ad - bc = sin(chi)/2`; the phases
//! of `s1` and `s2` enter only through the recurrence and the overall sign.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::linalg::{self, kron_vec};
use crate::spinor::{direction_spinor, spinor_from_angles, LocalSpinor};
use crate::state::{
    bloch_vector, concurrence_angle, fix_global_phase, global_phase_fix, reduced_density, PureState,
};
use crate::tolerance::{EPS_DEGEN, EPS_MATCH};
use crate::Qubit;

/// `(chi, spinor1, spinor2)` with `chi` in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorDecomposition {
    pub chi: f64,
    pub spinor1: LocalSpinor,
    pub spinor2: LocalSpinor,
}

impl SpinorDecomposition {
    pub fn new(chi: f64, spinor1: LocalSpinor, spinor2: LocalSpinor) -> Self {
        debug_assert!((0.0..=FRAC_PI_2).contains(&chi));
        SpinorDecomposition {
            chi,
            spinor1,
            spinor2,
        }
    }

    pub fn spinor(&self, qubit: Qubit) -> &LocalSpinor {
        match qubit {
            Qubit::First => &self.spinor1,
            Qubit::Second => &self.spinor2,
        }
    }

    /// Sum of the two spinor phases. Reduced to `(-pi, pi]` this is the
    /// recurrence whenever the Bloch directions are defined.
    pub fn alpha_sum(&self) -> f64 {
        self.spinor1.alpha() + self.spinor2.alpha()
    }

    /// Returns a copy with one spinor's phase `alpha` advanced by `delta`.
    pub fn shift_alpha(&self, qubit: Qubit, delta: f64) -> Self {
        let mut out = *self;
        match qubit {
            Qubit::First => out.spinor1 = self.spinor1.shift_alpha(delta),
            Qubit::Second => out.spinor2 = self.spinor2.shift_alpha(delta),
        }
        out
    }

    /// How far `psi` is from having `cos(chi/2)` and `sin(chi/2)` as its
    /// overlaps with `s1 (x) s2` and `P s1 (x) P s2`.
    pub fn schmidt_defect(&self, psi: &PureState) -> f64 {
        let (sin_half, cos_half) = (0.5 * self.chi).sin_cos();
        let direct = kron_vec(self.spinor1.components(), self.spinor2.components());
        let partner = kron_vec(
            self.spinor1.parity().components(),
            self.spinor2.parity().components(),
        );
        let amps = psi.amplitudes();
        let z = linalg::inner(&direct, &amps);
        let w = linalg::inner(&partner, &amps);
        (z - cos_half).norm().max((w - sin_half).norm())
    }
}

/// The phase-fixed state together with the phase-free spinors used to
/// decompose it and `<u1 (x) u2|psi>`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SchmidtFrame {
    pub chi: f64,
    pub u1: LocalSpinor,
    pub u2: LocalSpinor,
    pub overlap: Complex64,
}

impl SchmidtFrame {
    pub fn new(psi: &PureState) -> Self {
        let fixed = fix_global_phase(psi);
        let chi = concurrence_angle(&fixed);
        let (u1, u2) = if chi < FRAC_PI_2 - EPS_DEGEN {
            let n1 = bloch_vector(&reduced_density(&fixed, Qubit::First));
            let n2 = bloch_vector(&reduced_density(&fixed, Qubit::Second));
            (direction_spinor(n1.0), direction_spinor(n2.0))
        } else {
            // any direction works for qubit 1; qubit 2 follows from <u1|M
            let u1 = LocalSpinor::UP;
            let m = fixed.amplitude_matrix();
            let [p, q] = u1.components();
            let relative = [
                p.conj() * m[0][0] + q.conj() * m[1][0],
                p.conj() * m[0][1] + q.conj() * m[1][1],
            ];
            let u2 = LocalSpinor::normalized(relative[0], relative[1])
                .expect("relative state of a maximally entangled pair is nonzero");
            (u1, u2)
        };
        let overlap = linalg::inner(
            &kron_vec(u1.components(), u2.components()),
            &fixed.amplitudes(),
        );
        SchmidtFrame {
            chi,
            u1,
            u2,
            overlap,
        }
    }
}

/// The unimodular `f` with `reconstruct(&decompose(psi)) == f psi`.
///
/// This is the phase of [`fix_global_phase`] for entangled states. When
/// `|ad - bc| < EPS_DEGEN` every global phase is representable, so nothing
/// is removed and `f = 1`.
pub fn removed_phase(psi: &PureState) -> Complex64 {
    if psi.determinant().norm() < EPS_DEGEN {
        linalg::ONE
    } else {
        global_phase_fix(psi)
    }
}

/// Splits `psi` into `(chi, spinor1, spinor2)`.
///
/// The state is first phase-fixed so that `ad - bc >= 0`. Away from maximal
/// entanglement the phase-free spinors `u1`, `u2` point along the two
/// partial-trace Bloch vectors; at `chi = pi/2` qubit 1 is projected on `+z`
/// and `u2` is its relative state. The measured phase of `<u1 (x) u2|psi>`
/// is assigned entirely to qubit 1 (`alpha1 = gamma`, `alpha2 = 0`).
///
/// [`reconstruct`] of the result returns `fix_global_phase(psi)`, including
/// its sign. Separable input (`|ad - bc| < EPS_DEGEN`) comes back with its
/// own global phase, see [`removed_phase`].
pub fn decompose(psi: &PureState) -> SpinorDecomposition {
    let frame = SchmidtFrame::new(psi);
    let target = psi.with_phase(removed_phase(psi));
    let overlap = linalg::inner(
        &kron_vec(frame.u1.components(), frame.u2.components()),
        &target.amplitudes(),
    );
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        linalg::ONE
    };
    let out = SpinorDecomposition {
        chi: frame.chi,
        spinor1: frame.u1.with_phase(phase),
        spinor2: frame.u2,
    };
    debug_assert!(
        out.schmidt_defect(&target) < 1e3 * EPS_MATCH,
        "inconsistent decomposition of {psi}"
    );
    out
}

/// `cos(chi/2) s1 (x) s2 + sin(chi/2) P s1 (x) P s2`.
pub fn reconstruct(d: &SpinorDecomposition) -> PureState {
    let (sin_half, cos_half) = (0.5 * d.chi).sin_cos();
    let direct = kron_vec(d.spinor1.components(), d.spinor2.components());
    let partner = kron_vec(
        d.spinor1.parity().components(),
        d.spinor2.parity().components(),
    );
    let mut amps = [linalg::ZERO; 4];
    for (k, amp) in amps.iter_mut().enumerate() {
        *amp = cos_half * direct[k] + sin_half * partner[k];
    }
    PureState::from_unitary_image(amps)
}

/// The same state written out per amplitude in terms of the spinor
/// components `(A, B)` and `(C, D)`:
///
/// ```text
/// a = AC cos + B*D* sin      b = AD cos - B*C* sin
/// c = BC cos - A*D* sin      d = BD cos + A*C* sin
/// ```
pub fn reconstruct_componentwise(d: &SpinorDecomposition) -> PureState {
    let (sin_half, cos_half) = (0.5 * d.chi).sin_cos();
    let [a1, b1] = d.spinor1.components();
    let [c2, d2] = d.spinor2.components();
    let amps = [
        a1 * c2 * cos_half + b1.conj() * d2.conj() * sin_half,
        a1 * d2 * cos_half - b1.conj() * c2.conj() * sin_half,
        b1 * c2 * cos_half - a1.conj() * d2.conj() * sin_half,
        b1 * d2 * cos_half + a1.conj() * c2.conj() * sin_half,
    ];
    PureState::from_unitary_image(amps)
}

/// Builds a decomposition from `(chi, theta_i, phi_i, alpha_i)`.
pub fn decomposition_from_angles(
    chi: f64,
    (theta1, phi1, alpha1): (f64, f64, f64),
    (theta2, phi2, alpha2): (f64, f64, f64),
) -> SpinorDecomposition {
    SpinorDecomposition::new(
        chi,
        spinor_from_angles(theta1, phi1, alpha1),
        spinor_from_angles(theta2, phi2, alpha2),
    )
}
