use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use tambara_core::hom_search::{enumerate_homs, Op, UnaryAlgebra};
use tambara_core::{equivalence_check, lemma_sweep, Exec};

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn lemma(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma_sweep");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_with_input(BenchmarkId::new(name, 2), &exec, |b, &exec| b.iter(|| lemma_sweep(black_box(2), exec)));
    }
    group.finish();
}

/// A two-sorted algebra with one operation, big enough that the search tree is wide.
fn algebra(n: usize, m: usize) -> UnaryAlgebra {
    UnaryAlgebra { sorts: vec![n, m], ops: vec![Op { from: 0, to: 1, table: (0..n).map(|i| i % m).collect() }] }
}

fn hom_search(c: &mut Criterion) {
    let (src, tgt) = (algebra(9, 2), algebra(6, 3));
    let mut group = c.benchmark_group("hom_search");
    for (name, exec) in strategies() {
        group.bench_function(name, |b| b.iter(|| enumerate_homs(black_box(&src), &tgt, 100_000_000, exec).unwrap().len()));
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("dlens_equivalence");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(name, |b| b.iter(|| equivalence_check(black_box(2), 50, 0, exec).ok()));
    }
    group.finish();
}

criterion_group!(benches, lemma, hom_search, equivalence);
criterion_main!(benches);
