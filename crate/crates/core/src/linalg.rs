//! Fixed-size complex helpers: 2x2 operators and Kronecker products.

use std::ops::Mul;

use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, ONE]]);

    pub const PAULI_X: Matrix2 = Matrix2([[ZERO, ONE], [ONE, ZERO]]);
    pub const PAULI_Y: Matrix2 = Matrix2([
        [ZERO, Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), ZERO],
    ]);
    pub const PAULI_Z: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);

    pub fn from_diagonal(d0: Complex64, d1: Complex64) -> Self {
        Matrix2([[d0, ZERO], [ZERO, d1]])
    }

    /// `v . sigma` for a real 3-vector.
    pub fn pauli_dot(v: [f64; 3]) -> Self {
        let [x, y, z] = v;
        Matrix2([
            [Complex64::new(z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(-z, 0.0)],
        ])
    }

    #[inline]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn add(&self, other: &Matrix2) -> Self {
        let (m, o) = (&self.0, &other.0);
        Matrix2([
            [m[0][0] + o[0][0], m[0][1] + o[0][1]],
            [m[1][0] + o[1][0], m[1][1] + o[1][1]],
        ])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Deviation of `U^dagger U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Matrix2::IDENTITY)
    }

    /// Kronecker product `self (x) other` as a 4x4 row-major matrix.
    pub fn kron(&self, other: &Matrix2) -> [[Complex64; 4]; 4] {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.0[i / 2][j / 2] * other.0[i % 2][j % 2];
            }
        }
        out
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}

/// `|x> (x) |y>` in the order |00>, |01>, |10>, |11>.
#[inline]
pub fn kron_vec(x: [Complex64; 2], y: [Complex64; 2]) -> [Complex64; 4] {
    [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

#[inline]
pub fn apply4(m: &[[Complex64; 4]; 4], v: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [ZERO; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

/// `<x|y>`, antilinear in the first argument.
#[inline]
pub fn inner<const N: usize>(x: &[Complex64; N], y: &[Complex64; N]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

#[inline]
pub fn norm_sqr<const N: usize>(x: &[Complex64; N]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest componentwise modulus of `x - y`.
pub fn max_abs_diff<const N: usize>(x: &[Complex64; N], y: &[Complex64; N]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    y
}

/// Shortest arc between two angles, in `[0, pi]`.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    wrap_angle(x - y).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pauli_algebra() {
        let xy = Matrix2::PAULI_X * Matrix2::PAULI_Y;
        assert!(xy.max_abs_diff(&Matrix2::PAULI_Z.scale(I)) < 1e-15);
        for p in [Matrix2::PAULI_X, Matrix2::PAULI_Y, Matrix2::PAULI_Z] {
            assert!((p * p).max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
        }
        let v = Matrix2::pauli_dot([0.3, -0.2, 0.9]);
        let direct = Matrix2::PAULI_X
            .scale(0.3.into())
            .add(&Matrix2::PAULI_Y.scale((-0.2).into()))
            .add(&Matrix2::PAULI_Z.scale(0.9.into()));
        assert!(v.max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn kron_matches_vector_product() {
        let a = Matrix2::pauli_dot([0.1, 0.2, 0.3]);
        let b = Matrix2::PAULI_Y;
        let x = [Complex64::new(0.6, 0.1), Complex64::new(-0.2, 0.7)];
        let y = [Complex64::new(0.3, -0.4), Complex64::new(0.5, 0.5)];
        let lhs = apply4(&a.kron(&b), &kron_vec(x, y));
        let rhs = kron_vec(a.apply(x), b.apply(y));
        assert!(max_abs_diff(&lhs, &rhs) < 1e-15);
    }

    #[test]
    fn wrap_into_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(0.25 + 8.0 * PI) - 0.25).abs() < 1e-12);
        assert!((circular_distance(PI - 0.01, -PI + 0.01) - 0.02).abs() < 1e-12);
    }
}
