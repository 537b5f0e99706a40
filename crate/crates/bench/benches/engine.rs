use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pbw_bench::{dense, extension};
use pbw_core::corpus::{self, rings};
use pbw_core::{bounded_ni_check, classify_ring, parse_poly};

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("mul");
    for name in ["weyl_like(2)", "weyl_like(3)", "Z4[x,y]", "clifford_trunc(2)", "weyl_euler_pair"] {
        let ext = extension(name);
        let f = dense(&ext, 2);
        let g = dense(&ext, 3);
        group.bench_with_input(BenchmarkId::from_parameter(name), &(f, g), |b, (f, g)| {
            b.iter(|| ext.mul(black_box(f), black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn power(c: &mut Criterion) {
    let ext = extension("weyl_like(3)");
    let f = parse_poly(&ext, "[1,1,0]*x^2 + [0,1,0]*x + [2,0,1]").unwrap();
    c.bench_function("power/weyl_like(3)/8", |b| b.iter(|| ext.power(black_box(&f), 8).unwrap()));
}

fn probe(c: &mut Criterion) {
    let ext = extension("euler_like(2)");
    let f = parse_poly(&ext, "[0,1]*x^3 + [0,1]*x + [0,1]").unwrap();
    c.bench_function("nilpotency_probe/euler_like(2)", |b| b.iter(|| ext.nilpotency_probe(black_box(&f), 16).unwrap()));
}

fn ni_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounded_ni_check");
    group.sample_size(10);
    for name in ["euler_like(2)", "weyl_like(2)", "swap"] {
        let ext = extension(name);
        group.bench_function(name, |b| b.iter(|| bounded_ni_check(&ext, 2, 2, 8, 1_000_000).unwrap()));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let ext = extension("clifford_trunc(3,flip)");
    c.bench_function("verify/clifford_trunc(3,flip)", |b| {
        b.iter(|| black_box(ext.clone()).verified().unwrap())
    });
}

fn classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_ring");
    group.sample_size(20);
    let m2 = rings::matrix_full(2).unwrap();
    let u3 = rings::matrix_upper(3).unwrap();
    let t = corpus::by_name("Z2[y]/(y^4)").unwrap().ring;
    for (name, ring) in [("M2(Z2)", m2), ("U2(Z3)", u3), ("Z2[y]/(y^4)", t)] {
        group.bench_function(name, |b| b.iter(|| classify_ring(black_box(&ring), 4096).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, multiply, power, probe, ni_check, verify, classify);
criterion_main!(benches);
