use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sldd_bench::{full_pauli, noise, sldd_of};
use sldd_core::codes::lookup;
use sldd_core::sequences::cdd_sequence;
use sldd_core::verifier::{decoupling_order_fit, effective_hamiltonian, evolve, log_grid, moos_decompose, FitOptions};

fn evolution(c: &mut Criterion) {
    let omega = sldd_of("repetition(3)");
    let seq = cdd_sequence(&omega, 2).unwrap();
    let model = noise(3, 1);
    c.bench_function("evolve rep3 CDD2 (256 intervals, 16-dim)", |b| {
        b.iter(|| evolve(black_box(&seq), &model, 0.05).unwrap())
    });
    let u = evolve(&seq, &model, 0.05).unwrap();
    c.bench_function("effective Hamiltonian 16-dim", |b| b.iter(|| effective_hamiltonian(black_box(&u), 0.05).unwrap()));
    let h = effective_hamiltonian(&u, 0.05).unwrap();
    c.bench_function("twirl over rep3 SLDD", |b| b.iter(|| moos_decompose(black_box(&h), &omega).unwrap()));
}

fn fits(c: &mut Criterion) {
    let mut group = c.benchmark_group("decoupling fit");
    group.sample_size(10);
    let xz = full_pauli(1);
    let seq = cdd_sequence(&xz, 1).unwrap();
    let model = noise(1, 1);
    let grid = log_grid(1e-3, 1e-1, 6);
    group.bench_function("CDD1 single qubit", |b| {
        b.iter(|| decoupling_order_fit(&seq, &model, &xz, black_box(&grid), &FitOptions::default()).unwrap())
    });
    let omega = sldd_of("repetition(3)");
    let seq = cdd_sequence(&omega, 1).unwrap();
    let model = noise(3, 1);
    let opts = FitOptions {
        code: Some(lookup("repetition(3)").unwrap()),
        ..Default::default()
    };
    group.bench_function("rep3 SLDD CDD1 with syndrome check", |b| {
        b.iter(|| decoupling_order_fit(&seq, &model, &omega, black_box(&grid), &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, evolution, fits);
criterion_main!(benches);
