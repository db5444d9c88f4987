use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use contalg_bench::{cycle, overlap};
use contalg_core::dimension::{dim_a, dim_leq, DimensionQuery};
use contalg_core::search::{tabulate, RelationClass};
use contalg_core::topology::{dim_cl, rc_algebra, FiniteSpace};
use contalg_core::weight::{pi_weight_a, weight_w_a};
use contalg_core::LocalContactAlgebra;

fn dimension(c: &mut Criterion) {
    let mut group = c.benchmark_group("dim_leq");
    for n in [4, 5, 6] {
        let ca = cycle(n);
        let q = DimensionQuery::full(&ca, 1).unwrap();
        for level in [0, 1] {
            group.bench_with_input(BenchmarkId::new(format!("cycle{n}"), level), &level, |b, &level| {
                b.iter(|| dim_leq(black_box(&q), level).unwrap())
            });
        }
    }
    group.finish();

    let ca = cycle(6);
    let q = DimensionQuery::full(&ca, 3).unwrap();
    c.bench_function("dim_a/cycle6", |b| b.iter(|| dim_a(black_box(&q)).unwrap()));
}

fn weights(c: &mut Criterion) {
    let c6 = LocalContactAlgebra::with_all_bounded(cycle(6));
    c.bench_function("weight/cycle6", |b| b.iter(|| weight_w_a(black_box(&c6))));
    let l = overlap(4);
    c.bench_function("weight/overlap4", |b| b.iter(|| weight_w_a(black_box(&l))));
    let l = overlap(5);
    c.bench_function("pi_weight/overlap5", |b| b.iter(|| pi_weight_a(black_box(l.algebra()))));
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("search/any3", |b| b.iter(|| tabulate(3, RelationClass::Any, 1, 1).unwrap()));
    c.bench_function("search/graphs4", |b| {
        b.iter(|| tabulate(4, RelationClass::ReflexiveSymmetric, 1, 1).unwrap())
    });
    let x = FiniteSpace::discrete(4).unwrap();
    c.bench_function("topology/dim_cl_discrete4", |b| b.iter(|| dim_cl(black_box(&x), 1)));
    c.bench_function("topology/rc_discrete4", |b| b.iter(|| rc_algebra(black_box(&x))));
}

criterion_group!(benches, dimension, weights, enumeration);
criterion_main!(benches);
