use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rtbasis::pairing::{gram_matrix, rank_certificate};
use rtbasis::{standard_basis, steinberg_basis, GroupType};

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_matrix");
    group.sample_size(10);
    for n in 2..=4 {
        let g = GroupType::su(n).unwrap();
        let basis = standard_basis(g).basis().to_vec();
        group.bench_with_input(BenchmarkId::new("standard", g), &basis, |b, basis| {
            b.iter(|| black_box(gram_matrix(basis, g).unwrap()))
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_certificate");
    group.sample_size(10);
    for n in 2..=4 {
        let g = GroupType::su(n).unwrap();
        let basis = steinberg_basis(n).unwrap();
        group.bench_with_input(BenchmarkId::new("steinberg", g), &basis, |b, basis| {
            b.iter(|| black_box(rank_certificate(basis, g).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, gram, certificate);
criterion_main!(benches);
