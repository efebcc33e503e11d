//! Seeded random states, spinors and Hamiltonians.
//!
//! Every sampler owns a `ChaCha8Rng` seeded with `seed_from_u64`, so output
//! depends only on the seed and is identical across platforms. Normal
//! variates come from the Box-Muller transform.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angles::{state_from_angles, AngleSet};
use crate::dynamics::LocalHamiltonian;
use crate::error::{Error, Result};
use crate::spinor::LocalSpinor;
use crate::state::{fix_global_phase, PureState};

/// What to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    /// Draw from the fixed-concurrence sampler instead of Haar.
    pub fixed_chi: Option<f64>,
}

impl SampleSpec {
    pub fn haar(count: usize, seed: u64) -> Self {
        SampleSpec {
            count,
            seed,
            fixed_chi: None,
        }
    }

    pub fn fixed(count: usize, seed: u64, chi: f64) -> Self {
        SampleSpec {
            count,
            seed,
            fixed_chi: Some(chi),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidSampleSpec("count must be at least 1".into()));
        }
        if let Some(chi) = self.fixed_chi {
            if !(0.0..=FRAC_PI_2).contains(&chi) {
                return Err(Error::InvalidSampleSpec(format!(
                    "fixed_chi = {chi} is outside [0, pi/2]"
                )));
            }
        }
        Ok(())
    }
}

/// The generator used by every sampler in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two independent standard normals.
pub fn normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    // 1 - U lies in (0, 1], so the log is finite
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    (r * c, r * s)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let (re, im) = normal_pair(rng);
    Complex64::new(re, im)
}

/// Uniform on `(-pi, pi]`.
pub fn uniform_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    PI - TAU * rng.random::<f64>()
}

/// Polar angle of a point uniform on the sphere.
pub fn uniform_polar<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..=1.0f64).acos()
}

/// One Haar-random state, phase-fixed.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    loop {
        let amps = [(); 4].map(|_| complex_normal(rng));
        if let Ok(psi) = PureState::normalized(amps) {
            return fix_global_phase(&psi);
        }
    }
}

/// A Haar-random unit spinor, including its phase.
pub fn random_spinor<R: Rng + ?Sized>(rng: &mut R) -> LocalSpinor {
    loop {
        let [u, l] = [(); 2].map(|_| complex_normal(rng));
        if let Ok(s) = LocalSpinor::normalized(u, l) {
            return s;
        }
    }
}

/// Uniform on the unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let (x, y) = normal_pair(rng);
        let (z, _) = normal_pair(rng);
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1e-6 {
            return [x / norm, y / norm, z / norm];
        }
    }
}

/// `v` with each component uniform on `[-scale, scale)`, and `h_i` likewise
/// when `with_scalar` is set.
pub fn random_hamiltonian<R: Rng + ?Sized>(
    rng: &mut R,
    scale: f64,
    with_scalar: bool,
) -> LocalHamiltonian {
    let v = [(); 3].map(|_| rng.random_range(-scale..scale));
    let h_i = if with_scalar {
        rng.random_range(-scale..scale)
    } else {
        0.0
    };
    LocalHamiltonian::new(h_i, v)
}

/// Six angles with every coordinate at least `margin` away from the edges
/// of its range, where all of them are recoverable from the state.
pub fn random_angles<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> AngleSet {
    let chi = rng.random_range(margin..FRAC_PI_2 - margin);
    let theta1 = rng.random_range(margin..PI - margin);
    let phi1 = rng.random_range(-PI + margin..PI - margin);
    let theta2 = rng.random_range(margin..PI - margin);
    let phi2 = rng.random_range(-PI + margin..PI - margin);
    let gamma = rng.random_range(-PI + margin..PI - margin);
    AngleSet::new(chi, theta1, phi1, theta2, phi2, gamma)
}

/// `count` Haar-random states. `fixed_chi` must be absent.
pub fn sample_haar(spec: &SampleSpec) -> Result<Vec<PureState>> {
    spec.validate()?;
    if spec.fixed_chi.is_some() {
        return Err(Error::InvalidSampleSpec(
            "sample_haar does not take fixed_chi".into(),
        ));
    }
    let mut rng = rng_from_seed(spec.seed);
    Ok((0..spec.count).map(|_| haar_state(&mut rng)).collect())
}

/// States with concurrence exactly `sin(fixed_chi)`.
///
/// The Bloch directions are uniform on the sphere and `phi_i`, `gamma`
/// uniform on `(-pi, pi]`. This covers the fixed-`chi` slice evenly but is
/// not the Haar measure conditioned on `chi`.
pub fn sample_fixed_concurrence(spec: &SampleSpec) -> Result<Vec<PureState>> {
    spec.validate()?;
    let chi = spec.fixed_chi.ok_or_else(|| {
        Error::InvalidSampleSpec("sample_fixed_concurrence needs fixed_chi".into())
    })?;
    let mut rng = rng_from_seed(spec.seed);
    let states = (0..spec.count)
        .map(|_| {
            let theta1 = uniform_polar(&mut rng);
            let phi1 = uniform_angle(&mut rng);
            let theta2 = uniform_polar(&mut rng);
            let phi2 = uniform_angle(&mut rng);
            let gamma = uniform_angle(&mut rng);
            state_from_angles(&AngleSet::new(chi, theta1, phi1, theta2, phi2, gamma))
        })
        .collect();
    Ok(states)
}

/// [`sample_haar`] or [`sample_fixed_concurrence`], depending on `fixed_chi`.
pub fn sample_states(spec: &SampleSpec) -> Result<Vec<PureState>> {
    match spec.fixed_chi {
        Some(_) => sample_fixed_concurrence(spec),
        None => sample_haar(spec),
    }
}
