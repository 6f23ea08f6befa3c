use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use idealcheck::{build_instance, expand_product, verify_dagger, DaggerConfig, MembershipMode, MonomialSet};

fn factor_sets(n: usize) -> (Vec<MonomialSet>, Vec<MonomialSet>) {
    let inst = build_instance(n).unwrap();
    let sets = |fs: &[idealcheck::LinearFormFactor]| fs.iter().map(|f| f.to_set(n).unwrap()).collect();
    (sets(&inst.even_factors), sets(&inst.odd_factors))
}

fn expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_product");
    group.sample_size(10);
    for n in [5, 6] {
        let (even, odd) = factor_sets(n);
        group.bench_with_input(BenchmarkId::new("even", n), &even, |b, f| {
            b.iter(|| expand_product(n, black_box(f)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("odd", n), &odd, |b, f| {
            b.iter(|| expand_product(n, black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_dagger");
    group.sample_size(10);
    for (name, mode) in [("shift_up", MembershipMode::ShiftUp), ("materialize_q", MembershipMode::MaterializeQ)] {
        for n in [5, 6] {
            let config = DaggerConfig { mode, workers: 1, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| verify_dagger(black_box(n), &config).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, expansion, verification);
criterion_main!(benches);
