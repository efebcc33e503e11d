//! Local generators of the recurrence.
//!
//! Rotating one qubit about its own partial-trace axis leaves both Bloch
//! vectors and the concurrence alone and moves only `gamma`, linearly in
//! time. With `v = +E n` the rate is `d gamma / dt = -2E` in the conventions
//! of this crate: the `+E` eigenspace carries the `e^{+i gamma/2}` half of
//! the state and the `-E` eigenspace the `e^{-i gamma/2}` half.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::angles::{angles_from_state, AngleSet};
use crate::dynamics::evolution::evolve_full;
use crate::dynamics::hamiltonian::{aligned_eigenvectors, aligned_hamiltonian, LocalHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{circular_distance, kron_vec, wrap_angle};
use crate::spinor::LocalSpinor;
use crate::state::{bloch_vector, concurrence_angle, reduced_density, PureState};
use crate::tolerance::EPS_DEGEN;
use crate::Qubit;

/// Sense of a rotation about a qubit's own Bloch axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Same,
    Opposite,
}

/// Straight-line fit of the unwrapped recurrence over a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest `|gamma(t) - (slope t + intercept)|` over the grid.
    pub residual: f64,
    /// Largest change of any of `(chi, theta1, phi1, theta2, phi2)` from its
    /// value at the first grid point.
    pub max_angle_drift: f64,
    /// Unwrapped `gamma` at each grid point.
    pub gamma: Vec<f64>,
}

fn check_partially_entangled(psi: &PureState) -> Result<f64> {
    let chi = concurrence_angle(psi);
    if chi <= EPS_DEGEN || chi >= FRAC_PI_2 - EPS_DEGEN {
        return Err(Error::DegenerateState(format!(
            "chi = {chi} is not strictly between 0 and pi/2"
        )));
    }
    Ok(chi)
}

/// Unit Bloch direction of the given qubit.
pub fn bloch_axis(psi: &PureState, qubit: Qubit) -> Result<[f64; 3]> {
    bloch_vector(&reduced_density(psi, qubit))
        .direction()
        .ok_or_else(|| {
            Error::DegenerateState(format!("qubit {} has no Bloch direction", qubit.index()))
        })
}

/// Moves each value by a multiple of `2 pi` to the branch nearest its
/// predecessor.
pub fn unwrap_phases(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        let next = match out.last() {
            Some(&prev) => v - TAU * ((v - prev) / TAU).round(),
            None => v,
        };
        out.push(next);
    }
    out
}

/// Ordinary least squares `y = slope x + intercept`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (slope, my - slope * mx)
}

fn five_angle_drift(reference: &AngleSet, other: &AngleSet) -> f64 {
    [
        (other.chi - reference.chi).abs(),
        (other.theta1 - reference.theta1).abs(),
        circular_distance(other.phi1, reference.phi1),
        (other.theta2 - reference.theta2).abs(),
        circular_distance(other.phi2, reference.phi2),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Rotates `qubit` about its own Bloch axis with energy `energy` and tracks
/// `gamma` on `t_grid` through the full backend.
///
/// Needs `0 < chi < pi/2` and at least two grid points.
pub fn recurrence_drift(
    psi: &PureState,
    qubit: Qubit,
    energy: f64,
    t_grid: &[f64],
) -> Result<DriftFit> {
    check_partially_entangled(psi)?;
    if t_grid.len() < 2 {
        return Err(Error::DegenerateState(
            "drift fit needs at least two times".into(),
        ));
    }
    let h = aligned_hamiltonian(bloch_axis(psi, qubit)?, energy)?;
    let (h1, h2) = match qubit {
        Qubit::First => (h, LocalHamiltonian::ZERO),
        Qubit::Second => (LocalHamiltonian::ZERO, h),
    };

    let mut raw = Vec::with_capacity(t_grid.len());
    let mut reference: Option<AngleSet> = None;
    let mut max_angle_drift = 0.0f64;
    for &t in t_grid {
        let angles = angles_from_state(&evolve_full(psi, &h1, &h2, t))?;
        raw.push(angles.gamma.expect("partially entangled"));
        match reference {
            None => reference = Some(angles),
            Some(r) => max_angle_drift = max_angle_drift.max(five_angle_drift(&r, &angles)),
        }
    }
    let gamma = unwrap_phases(&raw);
    let (slope, intercept) = fit_line(t_grid, &gamma);
    let residual = t_grid
        .iter()
        .zip(&gamma)
        .map(|(t, g)| (g - (slope * t + intercept)).abs())
        .fold(0.0, f64::max);
    Ok(DriftFit {
        slope,
        intercept,
        residual,
        max_angle_drift,
        gamma,
    })
}

/// Rotates qubit 1 about its axis with energy `e1` and qubit 2 about its
/// axis with energy `e2`, in the same or the opposite sense, for time `t`.
/// Returns `gamma(t) - gamma(0)` in `(-pi, pi]`.
pub fn compound_rotation_check(
    psi: &PureState,
    e1: f64,
    e2: f64,
    t: f64,
    handedness: Handedness,
) -> Result<f64> {
    check_partially_entangled(psi)?;
    let axis1 = bloch_axis(psi, Qubit::First)?;
    let mut axis2 = bloch_axis(psi, Qubit::Second)?;
    if handedness == Handedness::Opposite {
        axis2 = axis2.map(|c| -c);
    }
    let h1 = aligned_hamiltonian(axis1, e1)?;
    let h2 = aligned_hamiltonian(axis2, e2)?;
    let before = angles_from_state(psi)?.gamma.expect("partially entangled");
    let after = angles_from_state(&evolve_full(psi, &h1, &h2, t))?
        .gamma
        .expect("partially entangled");
    Ok(wrap_angle(after - before))
}

/// Coefficients of `psi` (built from `angles`) on the four eigenvectors of
/// `H (x) I`, where `H` is aligned with qubit 1:
///
/// ```text
/// Psi1 = psi+ (x) |0>   Psi2 = psi+ (x) |1>   (eigenvalue +E)
/// Psi3 = psi- (x) |0>   Psi4 = psi- (x) |1>   (eigenvalue -E)
/// ```
///
/// The `+E` pair carries `e^{+i gamma/2}` and the `-E` pair `e^{-i gamma/2}`.
pub fn eigenspace_coefficients(angles: &AngleSet) -> [Complex64; 4] {
    let gamma = angles.gamma.unwrap_or(0.0);
    let (sx, cx) = (0.5 * angles.chi).sin_cos();
    let (s2, c2) = (0.5 * angles.theta2).sin_cos();
    let up = Complex64::from_polar(1.0, 0.5 * gamma);
    let down = up.conj();
    let neg = Complex64::from_polar(1.0, -0.5 * angles.phi2);
    let pos = neg.conj();
    [
        cx * c2 * neg * up,
        cx * s2 * pos * up,
        sx * s2 * neg * down,
        -sx * c2 * pos * down,
    ]
}

/// The four eigenvectors `Psi1..Psi4` used by [`eigenspace_coefficients`].
pub fn eigenspace_basis(theta1: f64, phi1: f64) -> [[Complex64; 4]; 4] {
    let (plus, minus) = aligned_eigenvectors(theta1, phi1);
    let [up, down] = [LocalSpinor::UP, LocalSpinor::DOWN].map(|s| s.components());
    [
        kron_vec(plus.components(), up),
        kron_vec(plus.components(), down),
        kron_vec(minus.components(), up),
        kron_vec(minus.components(), down),
    ]
}

/// Rebuilds the amplitudes from the four eigenspace components.
pub fn recompose_from_eigenspaces(angles: &AngleSet) -> [Complex64; 4] {
    let coeffs = eigenspace_coefficients(angles);
    let basis = eigenspace_basis(angles.theta1, angles.phi1);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (coef, vector) in coeffs.iter().zip(&basis) {
        for (o, v) in out.iter_mut().zip(vector) {
            *o += coef * v;
        }
    }
    out
}

/// Expected `d gamma / dt` for an aligned rotation of energy `energy`.
pub fn expected_drift_rate(energy: f64) -> f64 {
    -2.0 * energy
}

/// `|delta gamma|` expected after `t` for simultaneous aligned rotations,
/// reduced to `[0, pi]`.
pub fn expected_compound_shift(e1: f64, e2: f64, t: f64, handedness: Handedness) -> f64 {
    let rate = match handedness {
        Handedness::Same => e1 + e2,
        Handedness::Opposite => e1 - e2,
    };
    wrap_angle(-2.0 * rate * t).abs().min(PI)
}
