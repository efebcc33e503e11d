//! Pure two-qubit states as a pair of local spinors.
//!
//! A normalized state `a|00> + b|01> + c|10> + d|11>` is described by six
//! angles: the concurrence angle `chi`, the Bloch angles of each qubit and a
//! recurrence angle `gamma`. Equivalently it is a phase-fixed Schmidt form
//!
//! ```text
//! |psi> = cos(chi/2) |s1> (x) |s2> + sin(chi/2) P|s1> (x) P|s2>
//! ```
//!
//! with two unit spinors `s1`, `s2` and the parity map `P(A, B) = (B*, -A*)`.
//! Local unitary dynamics never touches `chi`, so it can be run on the two
//! spinors alone, see [`dynamics`].
//!
//! ```
//! use spinor_pair::{decompose, reconstruct, PureState};
//!
//! let psi = PureState::singlet();
//! let d = decompose(&psi);
//! assert!((d.chi - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//! assert!(reconstruct(&d).max_abs_diff(&psi) < 1e-12);
//! ```

pub mod angles;
pub mod decomposition;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod oracles;
pub mod sampling;
pub mod spinor;
pub mod state;
pub mod tolerance;

pub use angles::{
    angles_from_state, angles_or_separable, cross_check_gamma, gamma_sine_closed_form,
    state_from_angles, AngleSet, GammaCrossCheck,
};
pub use decomposition::{
    decompose, decomposition_from_angles, reconstruct, reconstruct_componentwise, removed_phase,
    SpinorDecomposition,
};
pub use error::{Error, Result};
pub use linalg::Matrix2;
pub use measurement::{born_full, born_local, born_local_forms, MeasurementDirection};
pub use sampling::{sample_fixed_concurrence, sample_haar, sample_states, SampleSpec};
pub use spinor::{direction_spinor, spinor_from_angles, LocalSpinor};
pub use state::{
    bloch_vector, concurrence, concurrence_angle, fix_global_phase, reduced_density, BlochVector,
    PureState, ReducedDensity,
};

/// One of the two qubits. Qubit 1 is the left tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    First,
    Second,
}

impl Qubit {
    pub const BOTH: [Qubit; 2] = [Qubit::First, Qubit::Second];

    /// `1` or `2`.
    pub fn index(self) -> u8 {
        match self {
            Qubit::First => 1,
            Qubit::Second => 2,
        }
    }

    pub fn other(self) -> Qubit {
        match self {
            Qubit::First => Qubit::Second,
            Qubit::Second => Qubit::First,
        }
    }
}

impl TryFrom<u8> for Qubit {
    type Error = u8;

    fn try_from(value: u8) -> std::result::Result<Self, u8> {
        match value {
            1 => Ok(Qubit::First),
            2 => Ok(Qubit::Second),
            other => Err(other),
        }
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/parameterization.md")]
    pub mod parameterization {}
    #[doc = include_str!("../../../book/src/spinors.md")]
    pub mod spinors {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    pub mod dynamics {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    pub mod measurement {}
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
}
