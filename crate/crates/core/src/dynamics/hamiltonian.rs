use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Matrix2, I};
use crate::spinor::LocalSpinor;

/// A single-qubit Hamiltonian `h_i I + v . sigma` in units with `hbar = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LocalHamiltonian {
    /// Spin-independent energy.
    pub h_i: f64,
    pub v: [f64; 3],
}

impl LocalHamiltonian {
    pub const ZERO: LocalHamiltonian = LocalHamiltonian {
        h_i: 0.0,
        v: [0.0; 3],
    };

    pub fn new(h_i: f64, v: [f64; 3]) -> Self {
        LocalHamiltonian { h_i, v }
    }

    /// Pure spin part, `h_i = 0`.
    pub fn spin(v: [f64; 3]) -> Self {
        LocalHamiltonian { h_i: 0.0, v }
    }

    pub fn field_strength(&self) -> f64 {
        let [x, y, z] = self.v;
        (x * x + y * y + z * z).sqrt()
    }

    pub fn matrix(&self) -> Matrix2 {
        Matrix2::pauli_dot(self.v).add(&Matrix2::IDENTITY.scale(self.h_i.into()))
    }

    /// The same Hamiltonian with the spin part reversed.
    pub fn reversed(&self) -> Self {
        LocalHamiltonian {
            h_i: self.h_i,
            v: self.v.map(|c| -c),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.h_i.is_finite() && self.v.iter().all(|c| c.is_finite())
    }
}

/// `exp(-i (v . sigma) t) = cos(|v| t) I - i sin(|v| t) (v/|v|) . sigma`.
///
/// The scalar part `h_i` is deliberately left out; it only contributes a
/// phase, which the evolution backends account for separately.
pub fn su2_operator(h: &LocalHamiltonian, t: f64) -> Matrix2 {
    let strength = h.field_strength();
    if strength == 0.0 {
        return Matrix2::IDENTITY;
    }
    let (sin, cos) = (strength * t).sin_cos();
    let k = -I * (sin / strength);
    let [x, y, z] = h.v;
    Matrix2([
        [Complex64::new(cos, 0.0) + k * z, k * Complex64::new(x, -y)],
        [k * Complex64::new(x, y), Complex64::new(cos, 0.0) - k * z],
    ])
}

/// `e^{-i h_i t} exp(-i (v . sigma) t)`, the complete local propagator.
pub fn local_propagator(h: &LocalHamiltonian, t: f64) -> Matrix2 {
    su2_operator(h, t).scale(Complex64::from_polar(1.0, -h.h_i * t))
}

/// `E * direction . sigma`, the Hamiltonian that rotates a qubit about
/// `direction` without moving its Bloch vector off that axis.
///
/// `direction` must be a unit vector (within `1e-9`) and `energy` positive.
/// Reverse the direction for a rotation of the opposite handedness.
pub fn aligned_hamiltonian(direction: [f64; 3], energy: f64) -> Result<LocalHamiltonian> {
    let norm = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitDirection { norm });
    }
    if !energy.is_finite() || energy <= 0.0 {
        return Err(Error::InvalidEnergy { energy });
    }
    let h = LocalHamiltonian::spin(direction.map(|c| energy * c));
    debug_assert!(aligned_eigen_residual(&h, direction, energy) < 1e-10);
    Ok(h)
}

/// The eigenvectors of `n . sigma` for `n` at spherical angles
/// `(theta, phi)`:
///
/// ```text
/// psi+ = ( cos(theta/2) e^{-i phi/2},  sin(theta/2) e^{+i phi/2})
/// psi- = ( sin(theta/2) e^{-i phi/2}, -cos(theta/2) e^{+i phi/2})
/// ```
///
/// `psi-` is the parity image of `psi+`.
pub fn aligned_eigenvectors(theta: f64, phi: f64) -> (LocalSpinor, LocalSpinor) {
    let plus = crate::spinor::spinor_from_angles(theta, phi, 0.0);
    (plus, plus.parity())
}

/// `max(|H psi+ - E psi+|, |H psi- + E psi-|)` for the eigenvectors of
/// [`aligned_eigenvectors`] along `direction`.
pub fn aligned_eigen_residual(h: &LocalHamiltonian, direction: [f64; 3], energy: f64) -> f64 {
    let [x, y, z] = direction;
    let theta = x.hypot(y).atan2(z);
    let phi = y.atan2(x);
    let (plus, minus) = aligned_eigenvectors(theta, phi);
    let m = h.matrix();
    let residual = |s: &LocalSpinor, eigenvalue: f64| {
        let hs = m.apply(s.components());
        let c = s.components();
        (hs[0] - eigenvalue * c[0])
            .norm()
            .max((hs[1] - eigenvalue * c[1]).norm())
    };
    residual(&plus, energy + h.h_i).max(residual(&minus, -energy + h.h_i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn zero_field_is_identity() {
        for t in [0.0, 1.0, -3.5, 1e6] {
            assert_eq!(su2_operator(&LocalHamiltonian::ZERO, t), Matrix2::IDENTITY);
            assert_eq!(
                su2_operator(&LocalHamiltonian::new(2.0, [0.0; 3]), t),
                Matrix2::IDENTITY
            );
        }
    }

    #[test]
    fn quarter_period_about_z() {
        let e = 1.7;
        let u = su2_operator(&LocalHamiltonian::spin([0.0, 0.0, e]), PI / (2.0 * e));
        let expected = Matrix2::from_diagonal(
            Complex64::from_polar(1.0, -PI / 2.0),
            Complex64::from_polar(1.0, PI / 2.0),
        );
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn unitary_and_composes() {
        let h = LocalHamiltonian::spin([0.3, -1.2, 0.8]);
        let u = su2_operator(&h, 0.7);
        assert!(u.unitarity_defect() < 1e-15);
        let twice = su2_operator(&h, 0.35) * su2_operator(&h, 0.35);
        assert!(twice.max_abs_diff(&u) < 1e-15);
        assert!(su2_operator(&h, -0.7).max_abs_diff(&u.adjoint()) < 1e-15);
    }

    #[test]
    fn propagator_carries_scalar_phase() {
        let h = LocalHamiltonian::new(1.5, [0.0; 3]);
        let u = local_propagator(&h, 2.0);
        let expected = Matrix2::IDENTITY.scale(Complex64::from_polar(1.0, -3.0));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn aligned_examples() {
        let h = aligned_hamiltonian([0.0, 0.0, 1.0], 1.0).unwrap();
        assert_eq!(h.v, [0.0, 0.0, 1.0]);
        let (plus, minus) = aligned_eigenvectors(0.0, 0.0);
        assert_eq!(plus, LocalSpinor::UP);
        assert_eq!(minus.components()[1], Complex64::new(-1.0, 0.0));

        let h = aligned_hamiltonian([1.0, 0.0, 0.0], 2.0).unwrap();
        assert_eq!(h.v, [2.0, 0.0, 0.0]);
        let (plus, minus) = aligned_eigenvectors(PI / 2.0, 0.0);
        let r = FRAC_1_SQRT_2;
        assert!((plus.upper() - r).norm() < 1e-15 && (plus.lower() - r).norm() < 1e-15);
        assert!((minus.upper() - r).norm() < 1e-15 && (minus.lower() + r).norm() < 1e-15);
        assert!(aligned_eigen_residual(&h, [1.0, 0.0, 0.0], 2.0) < 1e-15);
    }

    #[test]
    fn aligned_rejects_bad_input() {
        assert!(matches!(
            aligned_hamiltonian([1.0, 1.0, 0.0], 1.0),
            Err(Error::NonUnitDirection { .. })
        ));
        assert!(matches!(
            aligned_hamiltonian([0.0, 0.0, 1.0], 0.0),
            Err(Error::InvalidEnergy { .. })
        ));
        assert!(matches!(
            aligned_hamiltonian([0.0, f64::NAN, 1.0], 1.0),
            Err(Error::NonUnitDirection { .. })
        ));
    }
}
