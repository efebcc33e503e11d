//! Pure two-qubit states, their reduced density matrices and Bloch vectors.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};
use crate::tolerance::{EPS_DEGEN, EPS_NORM};
use crate::Qubit;

/// A normalized state `a|00> + b|01> + c|10> + d|11>`.
///
/// Qubit 1 is the left tensor factor, so the amplitude matrix is
/// `M[i][j] = amplitude of |i j>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amps: [Complex64; 4],
}

impl PureState {
    /// Validates normalization within [`EPS_NORM`].
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq = linalg::norm_sqr(&amps);
        if (norm_sq - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(PureState { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq = linalg::norm_sqr(&amps);
        if norm_sq == 0.0 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Ok(PureState {
            amps: amps.map(|z| z * scale),
        })
    }

    /// Wraps amplitudes already known to be normalized, e.g. the image of a
    /// normalized state under a unitary.
    pub(crate) fn from_unitary_image(amps: [Complex64; 4]) -> Self {
        debug_assert!((linalg::norm_sqr(&amps) - 1.0).abs() < 1e-10);
        PureState { amps }
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 4];
        amps[index] = Complex64::new(1.0, 0.0);
        PureState { amps }
    }

    /// `(|01> - |10>) / sqrt(2)`.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState {
            amps: [ZERO, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), ZERO],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    pub fn a(&self) -> Complex64 {
        self.amps[0]
    }
    pub fn b(&self) -> Complex64 {
        self.amps[1]
    }
    pub fn c(&self) -> Complex64 {
        self.amps[2]
    }
    pub fn d(&self) -> Complex64 {
        self.amps[3]
    }

    /// `M[i][j]`, the amplitude of `|i j>`.
    pub fn amplitude_matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.amps[0], self.amps[1]], [self.amps[2], self.amps[3]]]
    }

    /// `ad - bc`, half the complex concurrence.
    pub fn determinant(&self) -> Complex64 {
        self.a() * self.d() - self.b() * self.c()
    }

    pub fn norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        linalg::inner(&self.amps, &other.amps)
    }

    /// Multiplies every amplitude by `phase` (expected to be unimodular).
    pub fn with_phase(&self, phase: Complex64) -> Self {
        PureState {
            amps: self.amps.map(|z| z * phase),
        }
    }

    /// Exchanges the two qubits, i.e. swaps `b` and `c`.
    pub fn swap_qubits(&self) -> Self {
        let [a, b, c, d] = self.amps;
        PureState { amps: [a, c, b, d] }
    }

    /// Infinity norm of the componentwise difference. No phase alignment.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        linalg::max_abs_diff(&self.amps, &other.amps)
    }
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["00", "01", "10", "11"];
        let mut first = true;
        for (z, label) in self.amps.iter().zip(labels) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{label}>", z.re, z.im)?;
        }
        Ok(())
    }
}

/// A single-qubit reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensity(pub [[Complex64; 2]; 2]);

impl ReducedDensity {
    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs_diff(&self, other: &ReducedDensity) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Eigenvalues in descending order, `(1 +- |n|) / 2`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let len = bloch_vector(self).norm();
        let tr = self.trace().re;
        [0.5 * (tr + len), 0.5 * (tr - len)]
    }

    /// Hermitian, unit trace and positive semidefinite within [`EPS_NORM`].
    pub fn is_valid(&self) -> bool {
        let m = &self.0;
        let hermitian = (m[0][1] - m[1][0].conj()).norm() <= EPS_NORM
            && m[0][0].im.abs() <= EPS_NORM
            && m[1][1].im.abs() <= EPS_NORM;
        let unit_trace = (self.trace() - 1.0).norm() <= EPS_NORM;
        hermitian && unit_trace && self.eigenvalues()[1] >= -EPS_NORM
    }
}

/// Real 3-vector with `rho = (I + n . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn norm(&self) -> f64 {
        let [x, y, z] = self.0;
        (x * x + y * y + z * z).sqrt()
    }

    /// Unit vector along `n`, or `None` when `|n| <= EPS_DEGEN`.
    pub fn direction(&self) -> Option<[f64; 3]> {
        let len = self.norm();
        (len > EPS_DEGEN).then(|| self.0.map(|c| c / len))
    }

    /// Polar and azimuthal angles `(theta, phi)` with `theta` in `[0, pi]`
    /// and `phi` in `(-pi, pi]`. The azimuth of a vector on the z-axis is 0.
    pub fn spherical_angles(&self) -> (f64, f64) {
        let [x, y, z] = self.0;
        let rho = x.hypot(y);
        let theta = rho.atan2(z);
        let phi = if rho == 0.0 {
            0.0
        } else {
            linalg::wrap_angle(y.atan2(x))
        };
        (theta, phi)
    }
}

/// Multiplies `psi` by the global phase that makes `ad - bc` real and
/// non-negative.
///
/// When `|ad - bc| < EPS_DEGEN` the determinant carries no usable phase and
/// the largest-magnitude amplitude is made real and non-negative instead
/// (ties resolved in the order a, b, c, d). Since `ad - bc` is quadratic in the
/// amplitudes, `psi` and `-psi` are both fixed points; that sign is kept.
pub fn fix_global_phase(psi: &PureState) -> PureState {
    psi.with_phase(global_phase_fix(psi))
}

/// The unimodular factor applied by [`fix_global_phase`].
pub fn global_phase_fix(psi: &PureState) -> Complex64 {
    let det = psi.determinant();
    if det.norm() >= EPS_DEGEN {
        // e^{2i lambda} det = |det|
        return Complex64::from_polar(1.0, -0.5 * det.arg());
    }
    let amps = psi.amplitudes();
    let mut best = 0;
    for (i, z) in amps.iter().enumerate().skip(1) {
        if z.norm() > amps[best].norm() {
            best = i;
        }
    }
    let pivot = amps[best];
    if pivot.norm() == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    pivot.conj() / pivot.norm()
}

/// `C = 2|ad - bc|`, clamped to `[0, 1]`.
pub fn concurrence(psi: &PureState) -> f64 {
    (2.0 * psi.determinant().norm()).min(1.0)
}

/// The concurrence angle `chi` with `sin(chi) = C`, in `[0, pi/2]`.
///
/// Evaluated as `atan2(C, |n|)` with `|n|` the mean Bloch length of the two
/// qubits. This is `arcsin(C)` for a normalized state, but stays accurate near
/// `C = 1` where `arcsin` loses half the significant digits.
pub fn concurrence_angle(psi: &PureState) -> f64 {
    let c = 2.0 * psi.determinant().norm();
    let n1 = bloch_vector(&reduced_density(psi, Qubit::First)).norm();
    let n2 = bloch_vector(&reduced_density(psi, Qubit::Second)).norm();
    c.atan2(0.5 * (n1 + n2)).clamp(0.0, FRAC_PI_2)
}

/// Partial trace of `|psi><psi|` over the other qubit.
pub fn reduced_density(psi: &PureState, qubit: Qubit) -> ReducedDensity {
    let [a, b, c, d] = psi.amplitudes();
    match qubit {
        Qubit::First => {
            let off = a * c.conj() + b * d.conj();
            ReducedDensity([
                [(a.norm_sqr() + b.norm_sqr()).into(), off],
                [off.conj(), (c.norm_sqr() + d.norm_sqr()).into()],
            ])
        }
        Qubit::Second => {
            let off = a * b.conj() + c * d.conj();
            ReducedDensity([
                [(a.norm_sqr() + c.norm_sqr()).into(), off],
                [off.conj(), (b.norm_sqr() + d.norm_sqr()).into()],
            ])
        }
    }
}

/// `n_z = rho00 - rho11`, `n_x - i n_y = 2 rho01`.
pub fn bloch_vector(rho: &ReducedDensity) -> BlochVector {
    let m = &rho.0;
    let off = 2.0 * m[0][1];
    BlochVector([off.re, -off.im, (m[0][0] - m[1][1]).re])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_unnormalized_and_non_finite() {
        let z = c(0.0, 0.0);
        assert!(matches!(
            PureState::new([c(1.0, 0.0), c(0.1, 0.0), z, z]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(
            PureState::new([c(f64::NAN, 0.0), z, z, z]),
            Err(Error::NonFinite)
        );
        assert!(PureState::normalized([z; 4]).is_err());
    }

    #[test]
    fn phase_fix_removes_global_i() {
        let z = c(0.0, 0.0);
        let psi = PureState::new([c(0.0, H), z, z, c(0.0, H)]).unwrap();
        let fixed = fix_global_phase(&psi);
        let det = fixed.determinant();
        assert!(det.im.abs() < 1e-15 && det.re > 0.0);
        // (i a)(i d) = -1/2 is fixed by a quarter turn, up to the overall sign
        // that the determinant cannot see.
        let bell = PureState::new([c(H, 0.0), z, z, c(H, 0.0)]).unwrap();
        let d = fixed
            .max_abs_diff(&bell)
            .min(fixed.max_abs_diff(&bell.with_phase((-1.0).into())));
        assert!(d < 1e-15);
    }

    #[test]
    fn phase_fix_separable_fallback() {
        let psi = PureState::basis(0);
        assert_eq!(fix_global_phase(&psi), psi);
        let z = c(0.0, 0.0);
        let tilted = PureState::new([z, c(0.0, -0.8), z, c(0.6, 0.0)]).unwrap();
        let fixed = fix_global_phase(&tilted);
        assert!((fixed.b() - c(0.8, 0.0)).norm() < 1e-15);
        assert!((fixed.d() - c(0.0, 0.6)).norm() < 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        let z = c(0.0, 0.0);
        assert_eq!(concurrence(&PureState::basis(0)), 0.0);
        let bell = PureState::new([c(H, 0.0), z, z, c(H, 0.0)]).unwrap();
        assert!((concurrence(&bell) - 1.0).abs() < 1e-15);
        assert!((concurrence(&PureState::singlet()) - 1.0).abs() < 1e-15);
        assert!((concurrence_angle(&PureState::singlet()) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(concurrence_angle(&PureState::basis(3)), 0.0);
    }

    #[test]
    fn reduced_density_examples() {
        let rho = reduced_density(&PureState::basis(0), Qubit::First);
        assert_eq!(rho.0[0][0], c(1.0, 0.0));
        assert_eq!(rho.0[1][1], c(0.0, 0.0));
        for q in [Qubit::First, Qubit::Second] {
            let rho = reduced_density(&PureState::singlet(), q);
            assert!((rho.0[0][0] - 0.5).norm() < 1e-15);
            assert!((rho.0[1][1] - 0.5).norm() < 1e-15);
            assert!(rho.0[0][1].norm() < 1e-15);
            assert!(rho.is_valid());
        }
    }

    #[test]
    fn bloch_vector_examples() {
        let up = ReducedDensity([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        assert_eq!(bloch_vector(&up).0, [0.0, 0.0, 1.0]);
        let plus = ReducedDensity([[c(0.5, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.5, 0.0)]]);
        assert_eq!(bloch_vector(&plus).0, [1.0, 0.0, 0.0]);
        let mixed = ReducedDensity([[c(0.5, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.5, 0.0)]]);
        assert_eq!(bloch_vector(&mixed).0, [0.0, 0.0, 0.0]);
        assert_eq!(bloch_vector(&mixed).direction(), None);
        // +y eigenstate projector
        let plus_y = ReducedDensity([[c(0.5, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.5, 0.0)]]);
        assert_eq!(bloch_vector(&plus_y).0, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn spherical_angles_conventions() {
        let (t, p) = BlochVector([0.0, 0.0, -0.5]).spherical_angles();
        assert!((t - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(p, 0.0);
        let (t, p) = BlochVector([-1.0, -0.0, 0.0]).spherical_angles();
        assert!((t - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(p, std::f64::consts::PI);
    }
}
