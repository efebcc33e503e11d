use thiserror::Error;

use crate::angles::AngleSet;
use crate::Qubit;

/// Errors raised by state conversions and the dynamics checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitudes are not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("non-finite value in input")]
    NonFinite,

    /// The state is separable, so the recurrence is indistinguishable from a
    /// global phase. The remaining angles are still reported.
    #[error("recurrence is undefined for a separable state (chi = {})", .angles.chi)]
    SeparableGamma { angles: AngleSet },

    #[error("Bloch angles are undefined for a maximally entangled state (chi = {chi})")]
    MaximalEntanglement { chi: f64 },

    #[error("closed-form recurrence needs sin(theta{}) >= EPS_POLE, got {sin_theta}", .qubit.index())]
    PoleSingularity { qubit: Qubit, sin_theta: f64 },

    #[error("direction is not a unit vector: |n| = {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("energy must be finite and positive, got {energy}")]
    InvalidEnergy { energy: f64 },

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("invalid sample request: {0}")]
    InvalidSampleSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
