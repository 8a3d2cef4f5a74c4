use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sldd_bench::{full_pauli, sldd_of};
use sldd_core::codes::{concatenate, lookup};
use sldd_core::ddgs::{brute_force_minimal_ddgs, concatenated_sldd, plan_domains, CostModel, Family};
use sldd_core::pauli::centralizer;
use sldd_core::sequences::{cdd_sequence, first_order_filter_check, nudd_sequence};

fn generator_sets(c: &mut Criterion) {
    let steane = lookup("steane").unwrap();
    c.bench_function("centralizer steane SLDD", |b| {
        let omega = sldd_of("steane").omega;
        b.iter(|| centralizer(black_box(&omega)))
    });
    c.bench_function("concatenated SLDD steane R=2", |b| {
        b.iter(|| concatenated_sldd(&concatenate(black_box(&steane), 2).unwrap()).unwrap())
    });
    c.bench_function("brute force minimal set for P_2", |b| {
        let basis = full_pauli(2).omega;
        b.iter(|| brute_force_minimal_ddgs(black_box(&basis), 2, 4).unwrap())
    });
    c.bench_function("plan_domains k=2^40 p=4", |b| {
        let model = CostModel::new(Family::Cdd, 1).unwrap();
        b.iter(|| plan_domains(black_box(1 << 40), (7, 1, 0), model, 4).unwrap())
    });
}

fn sequences(c: &mut Criterion) {
    let steane = sldd_of("steane");
    c.bench_function("CDD2 over steane SLDD", |b| b.iter(|| cdd_sequence(black_box(&steane), 2).unwrap()));
    c.bench_function("NUDD3 over steane SLDD", |b| b.iter(|| nudd_sequence(black_box(&steane), 3).unwrap()));
    let seq = cdd_sequence(&steane, 2).unwrap();
    c.bench_function("first-order filter CDD2 steane", |b| {
        b.iter(|| first_order_filter_check(black_box(&seq), &steane).unwrap())
    });
}

criterion_group!(benches, generator_sets, sequences);
criterion_main!(benches);
