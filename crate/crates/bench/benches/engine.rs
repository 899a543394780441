use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vbclass::abelian::{smith_normal_form, IntMatrix};
use vbclass::builtins::builtin;
use vbclass::census::enumerate_cp4;
use vbclass::{check_rank4, compute_b, rr_value, BundleRank, ChernTuple};

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 4, 6, 10] {
        let m = random_matrix(&mut rng, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| smith_normal_form(black_box(m)))
        });
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let cp4 = builtin("cp4").unwrap();
    let u = ChernTuple::from_i64(&cp4, [&[3], &[-2], &[5], &[4]]).unwrap();
    c.bench_function("check_rank4/cp4", |b| {
        b.iter(|| check_rank4(black_box(&cp4), black_box(&u)))
    });
    c.bench_function("rr_value/cp4", |b| {
        b.iter(|| rr_value(black_box(&cp4), black_box(&u)))
    });

    let demo = builtin("torsion-demo").unwrap();
    c.bench_function("compute_b/torsion-demo", |b| {
        b.iter(|| compute_b(black_box(&demo)))
    });
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cp4");
    group.sample_size(10);
    group.bench_function("rank4/bound2", |b| {
        b.iter(|| enumerate_cp4(black_box(2), BundleRank::Four, None))
    });
    group.bench_function("rank3/bound4", |b| {
        b.iter(|| enumerate_cp4(black_box(4), BundleRank::Three, None))
    });
    group.finish();
}

criterion_group!(benches, snf, classify, census);
criterion_main!(benches);
