use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use spinor_pair::decompose;
use spinor_pair::dynamics::{
    evolve_full, evolve_separable, separate, su2_operator, LocalHamiltonian,
};
use spinor_pair::sampling::{haar_state, random_hamiltonian, rng_from_seed};

fn inputs() -> (spinor_pair::PureState, LocalHamiltonian, LocalHamiltonian) {
    let mut rng = rng_from_seed(11);
    let psi = haar_state(&mut rng);
    (
        psi,
        random_hamiltonian(&mut rng, 1.0, true),
        random_hamiltonian(&mut rng, 1.0, true),
    )
}

fn step(c: &mut Criterion) {
    let (psi, h1, h2) = inputs();
    let mut group = c.benchmark_group("step");
    group.bench_function("full", |b| {
        b.iter(|| evolve_full(black_box(&psi), &h1, &h2, black_box(0.01)))
    });
    let (d, ledger) = separate(&psi);
    group.bench_function("separable", |b| {
        b.iter(|| evolve_separable(black_box(&d), ledger, &h1, &h2, black_box(0.01)))
    });
    group.bench_function("su2_operator", |b| {
        b.iter(|| su2_operator(black_box(&h1), black_box(0.01)))
    });
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let (psi, _, _) = inputs();
    c.bench_function("decompose", |b| b.iter(|| decompose(black_box(&psi))));
    c.bench_function("separate_many", |b| {
        b.iter_batched(|| psi, |p| separate(&p), BatchSize::SmallInput)
    });
}

criterion_group!(benches, step, round_trip);
criterion_main!(benches);
