//! Single-qubit spinors carrying a Bloch direction and a physical phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix2};
use crate::state::BlochVector;
use crate::tolerance::EPS_NORM;

/// A unit 2-spinor `(upper, lower)`.
///
/// Unlike a single-qubit state, the overall phase is meaningful: a spinor
/// `e^{i alpha/2} u(theta, phi)` contributes its phase `alpha` to the
/// recurrence of the pair it belongs to. `alpha` is defined modulo `4 pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSpinor {
    components: [Complex64; 2],
}

impl LocalSpinor {
    pub const UP: LocalSpinor = LocalSpinor {
        components: [linalg::ONE, linalg::ZERO],
    };
    pub const DOWN: LocalSpinor = LocalSpinor {
        components: [linalg::ZERO, linalg::ONE],
    };

    pub fn new(upper: Complex64, lower: Complex64) -> Result<Self> {
        let components = [upper, lower];
        if components
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm_sq = linalg::norm_sqr(&components);
        if (norm_sq - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(LocalSpinor { components })
    }

    pub fn normalized(upper: Complex64, lower: Complex64) -> Result<Self> {
        let norm_sq = upper.norm_sqr() + lower.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm_sq == 0.0 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let s = norm_sq.sqrt().recip();
        Ok(LocalSpinor {
            components: [upper * s, lower * s],
        })
    }

    pub(crate) fn from_unitary_image(components: [Complex64; 2]) -> Self {
        debug_assert!((linalg::norm_sqr(&components) - 1.0).abs() < 1e-10);
        LocalSpinor { components }
    }

    pub fn components(&self) -> [Complex64; 2] {
        self.components
    }
    pub fn upper(&self) -> Complex64 {
        self.components[0]
    }
    pub fn lower(&self) -> Complex64 {
        self.components[1]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &LocalSpinor) -> Complex64 {
        linalg::inner(&self.components, &other.components)
    }

    /// Bloch-sphere point of the projector `|s><s|`; always a unit vector.
    pub fn bloch_vector(&self) -> BlochVector {
        let [u, l] = self.components;
        let cross = u.conj() * l;
        BlochVector([2.0 * cross.re, 2.0 * cross.im, u.norm_sqr() - l.norm_sqr()])
    }

    /// The parity map `(A, B) -> (B*, -A*)`.
    pub fn parity(&self) -> LocalSpinor {
        let [u, l] = self.components;
        LocalSpinor {
            components: [l.conj(), -u.conj()],
        }
    }

    /// Applies a 2x2 unitary.
    pub fn transform(&self, op: &Matrix2) -> LocalSpinor {
        LocalSpinor::from_unitary_image(op.apply(self.components))
    }

    pub fn with_phase(&self, phase: Complex64) -> LocalSpinor {
        LocalSpinor {
            components: self.components.map(|z| z * phase),
        }
    }

    /// Advances the spinor phase `alpha` by `delta`, i.e. multiplies by
    /// `e^{i delta / 2}`.
    pub fn shift_alpha(&self, delta: f64) -> LocalSpinor {
        self.with_phase(Complex64::from_polar(1.0, 0.5 * delta))
    }

    /// The phase `alpha` in `(-2 pi, 2 pi]` relative to the canonical
    /// direction spinor of the same Bloch point (see [`direction_spinor`]).
    pub fn alpha(&self) -> f64 {
        let reference = direction_spinor(self.bloch_vector().0);
        let z = reference.inner(self);
        2.0 * z.arg()
    }

    pub fn max_abs_diff(&self, other: &LocalSpinor) -> f64 {
        linalg::max_abs_diff(&self.components, &other.components)
    }
}

/// `e^{i alpha/2} (cos(theta/2) e^{-i phi/2}, sin(theta/2) e^{+i phi/2})`.
pub fn spinor_from_angles(theta: f64, phi: f64, alpha: f64) -> LocalSpinor {
    let (s, c) = (0.5 * theta).sin_cos();
    LocalSpinor {
        components: [
            Complex64::from_polar(c, 0.5 * (alpha - phi)),
            Complex64::from_polar(s, 0.5 * (alpha + phi)),
        ],
    }
}

/// The phase-free spinor pointing along `n`, which need not be normalized
/// but must be nonzero.
///
/// This is the `alpha = 0` spinor `(cos(theta/2) e^{-i phi/2},
/// sin(theta/2) e^{i phi/2})` with `(theta, phi)` the spherical angles of `n`
/// and `phi` in `(-pi, pi]`. Equivalently, it is the eigenvector of
/// `rho = (I + n . sigma)/2` with the larger eigenvalue. The half-angle
/// magnitudes are taken from whichever of `1 +- n_z` is not cancelling, so
/// the components stay accurate to rounding at both poles.
pub fn direction_spinor(n: [f64; 3]) -> LocalSpinor {
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    debug_assert!(len > 0.0, "direction_spinor of the zero vector");
    let z = n[2] / len;
    let rho = n[0].hypot(n[1]) / len;
    let (cos_half, sin_half) = if z >= 0.0 {
        let ch = (0.5 * (1.0 + z)).sqrt();
        (ch, rho / (2.0 * ch))
    } else {
        let sh = (0.5 * (1.0 - z)).sqrt();
        (rho / (2.0 * sh), sh)
    };
    let half_phase = if rho == 0.0 {
        linalg::ONE
    } else {
        // principal square root of e^{i phi}, phi in (-pi, pi]
        let phi = linalg::wrap_angle(n[1].atan2(n[0]));
        Complex64::from_polar(1.0, 0.5 * phi)
    };
    LocalSpinor {
        components: [half_phase.conj() * cos_half, half_phase * sin_half],
    }
}
