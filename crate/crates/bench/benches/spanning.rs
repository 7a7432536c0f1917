use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cofil_bench::{filtrations, graph, matrix, two_complex};
use cofil_core::chains::Ring;
use cofil_core::oracle::smith_normal_form;
use cofil_core::persistence::{cofiltration_of_spanning_trees, precover, precover_map_and_check};
use cofil_core::spanning::{n_spanning_complex, order_minimal_spanning_tree};

fn trees(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_minimal_spanning_tree");
    for n in [50u32, 200, 800] {
        let x = graph(n, 8.0 / n as f64, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| order_minimal_spanning_tree(black_box(x)))
        });
    }
    group.finish();
}

fn cofiltrations(c: &mut Criterion) {
    let fs = filtrations(20, 8, 3, 2);
    c.bench_function("cofiltration/20 filtrations", |b| {
        b.iter(|| fs.iter().map(|f| cofiltration_of_spanning_trees(black_box(f)).trees().len()).sum::<usize>())
    });
    c.bench_function("precover+check/20 filtrations", |b| {
        b.iter(|| {
            fs.iter()
                .map(|f| {
                    let p = precover(f, Ring::Integers).expect("precover");
                    precover_map_and_check(f, &p).len()
                })
                .sum::<usize>()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [8usize, 16, 32] {
        let m = matrix(n, n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
    let x = two_complex(9, 4);
    c.bench_function("n_spanning_complex/n=2", |b| {
        b.iter(|| n_spanning_complex(black_box(&x), 2, Ring::Integers).expect("n >= 1"))
    });
}

criterion_group!(benches, trees, cofiltrations, oracle);
criterion_main!(benches);
