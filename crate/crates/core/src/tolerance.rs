//! Numerical tolerances shared by every module.
//!
//! All values are absolute and apply to quantities of order one
//! (amplitudes, probabilities, angles in radians).

/// Normalization slack for states, spinors and reduced density matrices.
pub const EPS_NORM: f64 = 1e-12;

/// Agreement between two computations of the same state or angle.
pub const EPS_MATCH: f64 = 1e-9;

/// Distance from the separable (`chi = 0`) or maximally entangled
/// (`chi = pi/2`) boundary below which the recurrence or the Bloch
/// directions are treated as undefined.
pub const EPS_DEGEN: f64 = 1e-9;

/// Smallest `sin(theta)` for which the closed-form `sin(gamma)` expression
/// is evaluated.
pub const EPS_POLE: f64 = 1e-6;
