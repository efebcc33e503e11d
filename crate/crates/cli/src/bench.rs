//! Timing of the two evolution backends.

use std::hint::black_box;
use std::time::Instant;

use spinor_pair::dynamics::{evolve_full, evolve_separable, recombine, separate, LocalHamiltonian};
use spinor_pair::sampling::{haar_state, random_hamiltonian, rng_from_seed};
use spinor_pair::PureState;

use crate::formats::BenchReport;

pub const STEP_DURATION: f64 = 1e-3;
pub const VALID_DEVIATION: f64 = 1e-9;
/// Below this many steps the timings are flagged `LOW_CONFIDENCE`.
pub const CONFIDENT_STEPS: usize = 1000;

struct Workload {
    psi: PureState,
    steps: Vec<(LocalHamiltonian, LocalHamiltonian)>,
}

fn workload(steps: usize, seed: u64) -> Workload {
    let mut rng = rng_from_seed(seed);
    let psi = haar_state(&mut rng);
    let steps = (0..steps)
        .map(|_| {
            (
                random_hamiltonian(&mut rng, 2.0, true),
                random_hamiltonian(&mut rng, 2.0, true),
            )
        })
        .collect();
    Workload { psi, steps }
}

fn run_full(w: &Workload) -> PureState {
    w.steps.iter().fold(w.psi, |psi, (h1, h2)| {
        evolve_full(&psi, h1, h2, STEP_DURATION)
    })
}

fn run_separable(w: &Workload) -> PureState {
    let (d, ledger) = separate(&w.psi);
    let (d, ledger) = w.steps.iter().fold((d, ledger), |(d, ledger), (h1, h2)| {
        evolve_separable(&d, ledger, h1, h2, STEP_DURATION)
    });
    recombine(&d, &ledger)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Times `steps` random piecewise-constant steps on both backends, `trials`
/// times each, and reports the median time per step.
///
/// The deviation figure depends only on `steps` and `seed`.
pub fn run_bench(steps: usize, trials: usize, seed: u64) -> BenchReport {
    let steps = steps.max(1);
    let trials = trials.max(1);
    let w = workload(steps, seed);
    let mut full_ns = Vec::with_capacity(trials);
    let mut sep_ns = Vec::with_capacity(trials);
    let mut max_deviation = 0.0f64;
    for _ in 0..trials {
        let start = Instant::now();
        let full = black_box(run_full(black_box(&w)));
        full_ns.push(start.elapsed().as_nanos() as f64);

        let start = Instant::now();
        let sep = black_box(run_separable(black_box(&w)));
        sep_ns.push(start.elapsed().as_nanos() as f64);

        max_deviation = max_deviation.max(full.max_abs_diff(&sep));
    }
    let ns_per_step_full = median(full_ns) / steps as f64;
    let ns_per_step_separable = median(sep_ns) / steps as f64;
    BenchReport {
        steps,
        trials,
        seed,
        ns_per_step_full,
        ns_per_step_separable,
        speedup: ns_per_step_full / ns_per_step_separable,
        max_deviation,
        status: if max_deviation < VALID_DEVIATION {
            "VALID"
        } else {
            "INVALID"
        }
        .into(),
        timing: if steps < CONFIDENT_STEPS {
            "LOW_CONFIDENCE"
        } else {
            "NORMAL"
        }
        .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn single_step_is_low_confidence() {
        let r = run_bench(1, 1, 3);
        assert_eq!(r.timing, "LOW_CONFIDENCE");
        assert!(r.is_valid());
    }

    #[test]
    fn deviation_is_deterministic() {
        let a = run_bench(2000, 2, 9);
        let b = run_bench(2000, 3, 9);
        assert_eq!(a.max_deviation.to_bits(), b.max_deviation.to_bits());
        assert_eq!(a.timing, "NORMAL");
    }
}
