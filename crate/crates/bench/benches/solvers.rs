use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use packlab::decomp::two_cs_pip_3approx;
use packlab::iterpack::khdm_2k;
use packlab::oracle::brute_force_opt;
use packlab::ratlp::relaxation_extreme_point;
use packlab_bench::{fano, hypergraph, rank_two, triangle};

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp");
    for edges in [8, 16, 32] {
        let inst = hypergraph(3, edges, 1);
        group.bench_with_input(BenchmarkId::new("relaxation", edges), &inst, |b, inst| {
            b.iter(|| relaxation_extreme_point(black_box(inst), None).unwrap())
        });
    }
    group.finish();
}

fn iterative_packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("khdm");
    group.bench_function("fano", |b| {
        let inst = fano(3);
        b.iter(|| khdm_2k(black_box(&inst)).unwrap())
    });
    for edges in [8, 16, 32] {
        let inst = hypergraph(3, edges, 2);
        group.bench_with_input(BenchmarkId::new("random_k3", edges), &inst, |b, inst| {
            b.iter(|| khdm_2k(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn rank_two_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("twocs");
    group.bench_function("triangle", |b| {
        let inst = triangle(2);
        b.iter(|| two_cs_pip_3approx(black_box(&inst)).unwrap())
    });
    for edges in [6, 12, 24] {
        let inst = rank_two(edges, 3);
        group.bench_with_input(BenchmarkId::new("random", edges), &inst, |b, inst| {
            b.iter(|| two_cs_pip_3approx(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let inst = rank_two(16, 4);
    c.bench_function("brute_force_16", |b| {
        b.iter(|| brute_force_opt(black_box(&inst), 20).unwrap())
    });
}

criterion_group!(benches, lp, iterative_packing, rank_two_pipeline, oracle);
criterion_main!(benches);
