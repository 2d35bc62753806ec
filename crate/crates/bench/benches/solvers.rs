use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use delta_riemann::verify::{random_bumps, weak_residual};
use delta_riemann::{classify, construct, sample_solution, solve_classical, solve_measure, solve_singular};
use delta_riemann_bench::{classical_pairs, law, singular_data, st};

fn bench_classify(c: &mut Criterion) {
    let g = law();
    let pairs = classical_pairs();
    c.bench_function("classify", |b| {
        b.iter(|| {
            for (_, l, r) in &pairs {
                black_box(classify(&g, black_box(*l), black_box(*r)).unwrap());
            }
        })
    });
}

fn bench_classical(c: &mut Criterion) {
    let g = law();
    let mut group = c.benchmark_group("solve_classical");
    for (name, l, r) in classical_pairs() {
        group.bench_function(name, |b| b.iter(|| solve_classical(&g, black_box(l), black_box(r)).unwrap()));
    }
    group.finish();
}

fn bench_construct(c: &mut Criterion) {
    let g = law();
    let mut group = c.benchmark_group("construct");
    for (name, data) in singular_data() {
        group.bench_function(name, |b| b.iter(|| construct(&g, black_box(data)).unwrap()));
    }
    group.finish();
}

fn bench_measure(c: &mut Criterion) {
    let g = law();
    c.bench_function("solve_measure/delta_rarefaction", |b| {
        b.iter(|| solve_measure(&g, black_box(st(0.0, 1.0)), black_box(st(0.0, 4.0)), 0.5).unwrap())
    });
}

fn bench_sample(c: &mut Criterion) {
    let g = law();
    let sol = solve_measure(&g, st(0.0, 1.0), st(0.0, 4.0), 0.5).unwrap();
    c.bench_function("sample_solution/1001", |b| {
        b.iter(|| sample_solution(&sol, black_box(1.0), -3.0, 3.0, 1001).unwrap())
    });
}

fn bench_weak(c: &mut Criterion) {
    let g = law();
    let (_, data) = singular_data()[1];
    let sol = solve_singular(&g, data, 0.5).unwrap();
    let bump = random_bumps(&sol, 1, 3)[0];
    let mut group = c.benchmark_group("weak_residual");
    for order in [8, 32] {
        group.bench_function(format!("order_{order}"), |b| b.iter(|| weak_residual(&sol, &bump, order).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_classify, bench_classical, bench_construct, bench_measure, bench_sample, bench_weak);
criterion_main!(benches);
