//! The six-angle parameterization `(chi, theta1, phi1, theta2, phi2, gamma)`.
//!
//! `chi` is the concurrence angle, `(theta_i, phi_i)` are the spherical angles
//! of each qubit's Bloch vector and `gamma` is the recurrence, the one angle
//! that is invisible to both partial traces.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::decomposition::SchmidtFrame;
use crate::error::{Error, Result};
use crate::linalg::wrap_angle;
use crate::state::{bloch_vector, fix_global_phase, reduced_density, PureState};
use crate::tolerance::{EPS_DEGEN, EPS_POLE};
use crate::Qubit;

/// Six natural angles of a pure two-qubit state, in radians.
///
/// `gamma` is `None` for separable states, where it would coincide with a
/// global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSet {
    pub chi: f64,
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub gamma: Option<f64>,
}

impl AngleSet {
    pub fn new(chi: f64, theta1: f64, phi1: f64, theta2: f64, phi2: f64, gamma: f64) -> Self {
        AngleSet {
            chi,
            theta1,
            phi1,
            theta2,
            phi2,
            gamma: Some(gamma),
        }
    }

    /// Checks `chi in [0, pi/2]`, `theta_i in [0, pi]`, `phi_i` and `gamma` in
    /// `[-pi, pi]` (the endpoint `-pi` is accepted as an alias of `pi`).
    pub fn validate(&self) -> std::result::Result<(), String> {
        let fields = [
            ("chi", self.chi, 0.0, FRAC_PI_2),
            ("theta1", self.theta1, 0.0, PI),
            ("theta2", self.theta2, 0.0, PI),
            ("phi1", self.phi1, -PI, PI),
            ("phi2", self.phi2, -PI, PI),
            ("gamma", self.gamma.unwrap_or(0.0), -PI, PI),
        ];
        for (name, value, lo, hi) in fields {
            if !value.is_finite() || value < lo || value > hi {
                return Err(format!("{name} = {value} outside [{lo}, {hi}]"));
            }
        }
        Ok(())
    }

    pub fn theta(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::First => self.theta1,
            Qubit::Second => self.theta2,
        }
    }

    pub fn phi(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::First => self.phi1,
            Qubit::Second => self.phi2,
        }
    }
}

/// Builds `(a, b, c, d)` from six angles.
///
/// The result is normalized and has `ad - bc = sin(chi)/2`, real and
/// non-negative. A missing `gamma` is read as 0. Shifting `gamma` by `2 pi`
/// flips the sign of the state.
pub fn state_from_angles(angles: &AngleSet) -> PureState {
    let gamma = angles.gamma.unwrap_or(0.0);
    let (sx, cx) = (0.5 * angles.chi).sin_cos();
    let (s1, c1) = (0.5 * angles.theta1).sin_cos();
    let (s2, c2) = (0.5 * angles.theta2).sin_cos();
    let g = Complex64::from_polar(1.0, 0.5 * gamma);
    let gc = g.conj();
    let sum = 0.5 * (angles.phi1 + angles.phi2);
    let diff = 0.5 * (angles.phi1 - angles.phi2);

    let a = (cx * c1 * c2 * g + sx * s1 * s2 * gc) * Complex64::from_polar(1.0, -sum);
    let b = (cx * c1 * s2 * g - sx * s1 * c2 * gc) * Complex64::from_polar(1.0, -diff);
    let c = (cx * s1 * c2 * g - sx * c1 * s2 * gc) * Complex64::from_polar(1.0, diff);
    let d = (cx * s1 * s2 * g + sx * c1 * c2 * gc) * Complex64::from_polar(1.0, sum);
    PureState::from_unitary_image([a, b, c, d])
}

/// Recovers the six angles of `psi` (any global phase).
///
/// `chi` comes from the concurrence, `(theta_i, phi_i)` from the Bloch
/// vectors and `gamma` from the phase-fixed spinor decomposition, which has
/// no pole singularity. `gamma` is returned in `(-pi, pi]`.
///
/// Fails with [`Error::SeparableGamma`] (carrying the other five angles) when
/// `chi < EPS_DEGEN` and with [`Error::MaximalEntanglement`] when the Bloch
/// vectors vanish.
pub fn angles_from_state(psi: &PureState) -> Result<AngleSet> {
    let frame = SchmidtFrame::new(psi);
    let chi = frame.chi;
    if chi > FRAC_PI_2 - EPS_DEGEN {
        return Err(Error::MaximalEntanglement { chi });
    }
    let (theta1, phi1) = bloch_vector(&reduced_density(psi, Qubit::First)).spherical_angles();
    let (theta2, phi2) = bloch_vector(&reduced_density(psi, Qubit::Second)).spherical_angles();
    let mut angles = AngleSet {
        chi,
        theta1,
        phi1,
        theta2,
        phi2,
        gamma: None,
    };
    if chi < EPS_DEGEN {
        return Err(Error::SeparableGamma { angles });
    }
    // both frame spinors are the alpha = 0 spinors of these (theta, phi)
    angles.gamma = Some(wrap_angle(2.0 * frame.overlap.arg()));
    Ok(angles)
}

/// Like [`angles_from_state`], but a separable state yields `gamma = None`
/// instead of an error.
pub fn angles_or_separable(psi: &PureState) -> Result<AngleSet> {
    match angles_from_state(psi) {
        Err(Error::SeparableGamma { angles }) => Ok(angles),
        other => other,
    }
}

/// `sin(gamma) = 2 Im(ad + bc) / (cos(chi) sin(theta1) sin(theta2))`.
///
/// A closed form that only fixes the sine of the recurrence. It needs the
/// phase-fixed state (applied here) and breaks down at the Bloch-sphere
/// poles, in which case [`Error::PoleSingularity`] is returned.
pub fn gamma_sine_closed_form(psi: &PureState, angles: &AngleSet) -> Result<f64> {
    if angles.chi < EPS_DEGEN {
        return Err(Error::SeparableGamma { angles: *angles });
    }
    if angles.chi > FRAC_PI_2 - EPS_DEGEN {
        return Err(Error::MaximalEntanglement { chi: angles.chi });
    }
    for qubit in [Qubit::First, Qubit::Second] {
        let sin_theta = angles.theta(qubit).sin();
        if sin_theta < EPS_POLE {
            return Err(Error::PoleSingularity { qubit, sin_theta });
        }
    }
    let fixed = fix_global_phase(psi);
    let sym = fixed.a() * fixed.d() + fixed.b() * fixed.c();
    Ok(2.0 * sym.im / (angles.chi.cos() * angles.theta1.sin() * angles.theta2.sin()))
}

/// Both recurrence estimates side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaCrossCheck {
    pub angles: AngleSet,
    /// `sin(gamma)` from the spinor-decomposition value of `gamma`.
    pub robust_sine: f64,
    /// `sin(gamma)` from the closed form.
    pub closed_form_sine: f64,
}

impl GammaCrossCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.robust_sine - self.closed_form_sine).abs()
    }
}

/// Extracts the angles and evaluates the closed-form sine next to the robust
/// value.
pub fn cross_check_gamma(psi: &PureState) -> Result<GammaCrossCheck> {
    let angles = angles_from_state(psi)?;
    let closed_form_sine = gamma_sine_closed_form(psi, &angles)?;
    let gamma = angles.gamma.expect("non-separable angles carry gamma");
    Ok(GammaCrossCheck {
        angles,
        robust_sine: gamma.sin(),
        closed_form_sine,
    })
}
