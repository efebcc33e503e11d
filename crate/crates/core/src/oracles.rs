//! Slow, independent reference computations for differential tests.
//!
//! Nothing here shares code with the closed forms it checks: the partial
//! trace goes through the full 4x4 projector and the exponential through an
//! eigendecomposition.

use num_complex::Complex64;

use crate::dynamics::LocalHamiltonian;
use crate::linalg::Matrix2;
use crate::state::{PureState, ReducedDensity};
use crate::Qubit;

/// `rho = |psi><psi|` as a 4x4 matrix.
pub fn oracle_projector(psi: &PureState) -> [[Complex64; 4]; 4] {
    let amps = psi.amplitudes();
    let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, row) in rho.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = amps[r] * amps[c].conj();
        }
    }
    rho
}

/// Partial trace of the projector over the other qubit, index by index.
pub fn oracle_partial_trace(psi: &PureState, qubit: Qubit) -> ReducedDensity {
    let rho = oracle_projector(psi);
    // basis index of |q1 q2> is 2 q1 + q2
    let index = |kept: usize, traced: usize| match qubit {
        Qubit::First => 2 * kept + traced,
        Qubit::Second => 2 * traced + kept,
    };
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *entry += rho[index(i, k)][index(j, k)];
            }
        }
    }
    ReducedDensity(out)
}

/// Eigenvalues (ascending) and unit eigenvectors of a 2x2 Hermitian matrix.
pub fn hermitian_eigen(m: &Matrix2) -> ([f64; 2], [[Complex64; 2]; 2]) {
    let p = m.0[0][0].re;
    let r = m.0[1][1].re;
    let q = m.0[0][1];
    let mean = 0.5 * (p + r);
    let radius = (0.5 * (p - r)).hypot(q.norm());
    let values = [mean - radius, mean + radius];
    if radius == 0.0 {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        return (values, [[one, zero], [zero, one]]);
    }
    let vector = |lambda: f64| {
        // both rows of (M - lambda) v = 0 give a candidate; keep the longer
        let x = [q, Complex64::new(lambda - p, 0.0)];
        let y = [Complex64::new(lambda - r, 0.0), q.conj()];
        let nx = x[0].norm_sqr() + x[1].norm_sqr();
        let ny = y[0].norm_sqr() + y[1].norm_sqr();
        let (v, n) = if nx >= ny { (x, nx) } else { (y, ny) };
        let n = n.sqrt();
        [v[0] / n, v[1] / n]
    };
    (values, [vector(values[0]), vector(values[1])])
}

/// `exp(-i H t)` by diagonalizing `v . sigma` (plus `h_i I` if
/// `include_scalar`).
pub fn oracle_matrix_exp(h: &LocalHamiltonian, t: f64, include_scalar: bool) -> Matrix2 {
    let generator = if include_scalar {
        h.matrix()
    } else {
        Matrix2::pauli_dot(h.v)
    };
    let (values, vectors) = hermitian_eigen(&generator);
    let mut u = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (lambda, v) in values.iter().zip(&vectors) {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        for (i, row) in u.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += phase * v[i] * v[j].conj();
            }
        }
    }
    Matrix2(u)
}
