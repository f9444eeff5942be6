use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use diaglab::diagnosability::brute_force_diagnosability;
use diaglab::distinguish::{distinguishable, syndrome_oracle_distinguishable};
use diaglab::fault::m_connectivity;
use diaglab::topology::{arrangement, hypercube, nk_star};
use diaglab::witness::q4_indistinguishable_pair;
use diaglab::{DiagnosticModel, FaultModelSpec};

fn generators(c: &mut Criterion) {
    c.bench_function("hypercube(10)", |b| b.iter(|| hypercube(black_box(10)).unwrap()));
    c.bench_function("nk_star(7,4)", |b| b.iter(|| nk_star(black_box(7), 4).unwrap()));
    c.bench_function("arrangement(7,4)", |b| b.iter(|| arrangement(black_box(7), 4).unwrap()));
}

fn deciders(c: &mut Criterion) {
    let q4 = hypercube(4).unwrap();
    let (f1, f2) = q4_indistinguishable_pair();
    c.bench_function("mmstar decider Q_4", |b| {
        b.iter(|| distinguishable(&q4, black_box(&f1), &f2, DiagnosticModel::MmStar).unwrap())
    });
    c.bench_function("mmstar oracle Q_4", |b| {
        b.iter(|| syndrome_oracle_distinguishable(&q4, black_box(&f1), &f2, DiagnosticModel::MmStar).unwrap())
    });
}

fn exhaustive(c: &mut Criterion) {
    let q3 = hypercube(3).unwrap();
    let q4 = hypercube(4).unwrap();
    let extra1 = FaultModelSpec::extra(1);
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    group.bench_function("tbar_1 Q_3 MM*", |b| {
        b.iter(|| brute_force_diagnosability(&q3, extra1, DiagnosticModel::MmStar, 8).unwrap())
    });
    group.bench_function("tbar_1 Q_4 MM*", |b| {
        b.iter(|| brute_force_diagnosability(&q4, extra1, DiagnosticModel::MmStar, 16).unwrap())
    });
    group.bench_function("kappa_bar_1 Q_4", |b| b.iter(|| m_connectivity(&q4, extra1, None).unwrap()));
    group.finish();
}

criterion_group!(benches, generators, deciders, exhaustive);
criterion_main!(benches);
