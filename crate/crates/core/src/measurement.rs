//! Spin-direction measurement probabilities.
//!
//! [`born_full`] is the usual projector expectation on the four amplitudes.
//! [`born_local`] gets the same number from `chi` and one local spinor:
//!
//! ```text
//! p = cos^2(chi/2) |<dir|s>|^2 + sin^2(chi/2) |<dir|P s>|^2
//!   = cos(chi) |<dir|s>|^2 + sin^2(chi/2)
//! ```

use num_complex::Complex64;

use crate::decomposition::SpinorDecomposition;
use crate::spinor::LocalSpinor;
use crate::state::PureState;
use crate::Qubit;

/// The local eigenstate a measurement projects onto.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection(pub LocalSpinor);

impl MeasurementDirection {
    pub fn new(spinor: LocalSpinor) -> Self {
        MeasurementDirection(spinor)
    }

    /// Spin up along the unit vector `n`.
    pub fn along(n: [f64; 3]) -> Self {
        MeasurementDirection(crate::spinor::direction_spinor(n))
    }

    pub fn spinor(&self) -> &LocalSpinor {
        &self.0
    }

    /// The orthogonal outcome, spin up along `-n`.
    pub fn antipode(&self) -> Self {
        MeasurementDirection(self.0.parity())
    }

    /// `|<dir|s>|^2`.
    pub fn overlap_sqr(&self, s: &LocalSpinor) -> f64 {
        self.0.inner(s).norm_sqr()
    }
}

/// `<psi| Pi (x) I |psi>` or `<psi| I (x) Pi |psi>` with `Pi = |dir><dir|`.
pub fn born_full(psi: &PureState, qubit: Qubit, dir: &MeasurementDirection) -> f64 {
    let m = psi.amplitude_matrix();
    let [u, l] = dir.0.components().map(|c| c.conj());
    let project = |x: Complex64, y: Complex64| (u * x + l * y).norm_sqr();
    let p = match qubit {
        Qubit::First => project(m[0][0], m[1][0]) + project(m[0][1], m[1][1]),
        Qubit::Second => project(m[0][0], m[0][1]) + project(m[1][0], m[1][1]),
    };
    p.clamp(0.0, 1.0)
}

/// The two-term and the reduced local forms, in that order.
pub fn born_local_forms(chi: f64, s: &LocalSpinor, dir: &MeasurementDirection) -> (f64, f64) {
    let (sin_half, cos_half) = (0.5 * chi).sin_cos();
    let p = dir.overlap_sqr(s);
    let two_term = cos_half * cos_half * p + sin_half * sin_half * dir.overlap_sqr(&s.parity());
    let reduced = chi.cos() * p + sin_half * sin_half;
    (two_term, reduced)
}

/// Probability of finding the qubit carried by `s` along `dir`, using only
/// `chi` and that qubit's spinor.
pub fn born_local(chi: f64, s: &LocalSpinor, dir: &MeasurementDirection) -> f64 {
    let (two_term, reduced) = born_local_forms(chi, s, dir);
    debug_assert!(
        (two_term - reduced).abs() < 1e-12,
        "local Born forms disagree: {two_term} vs {reduced}"
    );
    two_term.clamp(0.0, 1.0)
}

/// [`born_local`] on the spinor of `qubit`.
pub fn born_decomposed(d: &SpinorDecomposition, qubit: Qubit, dir: &MeasurementDirection) -> f64 {
    born_local(d.chi, d.spinor(qubit), dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn product_state() {
        let psi = PureState::basis(0);
        let up = MeasurementDirection::new(LocalSpinor::UP);
        assert_eq!(born_full(&psi, Qubit::First, &up), 1.0);
        assert_eq!(born_full(&psi, Qubit::Second, &up.antipode()), 0.0);
        // |01>: qubit 2 is down
        let psi = PureState::basis(1);
        assert_eq!(born_full(&psi, Qubit::First, &up), 1.0);
        assert_eq!(born_full(&psi, Qubit::Second, &up), 0.0);
    }

    #[test]
    fn singlet_is_always_half() {
        let psi = PureState::singlet();
        let d = decompose(&psi);
        for n in [
            [0.0, 0.0, 1.0],
            [0.6, 0.0, 0.8],
            [0.0, -1.0, 0.0],
            [0.48, 0.6, -0.64],
        ] {
            let dir = MeasurementDirection::along(n);
            for q in Qubit::BOTH {
                assert!((born_full(&psi, q, &dir) - 0.5).abs() < 1e-15);
                assert!((born_decomposed(&d, q, &dir) - 0.5).abs() < 1e-15);
            }
            assert!((born_local(FRAC_PI_2, &LocalSpinor::UP, &dir) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_chi_is_ordinary_rule() {
        let s = crate::spinor::spinor_from_angles(1.1, -0.4, 0.9);
        let dir = MeasurementDirection::along([0.0, 0.6, 0.8]);
        let ordinary = dir.overlap_sqr(&s);
        assert!((born_local(0.0, &s, &dir) - ordinary).abs() < 1e-15);
    }
}
