use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dynlin_bench::{layered, random_invertible, rng};
use dynlin_core::canonical::{canonical_form, conjugacy_test};
use dynlin_core::linalg::minimal_polynomial;
use dynlin_core::oracle::bruteforce_conjugacy;
use dynlin_core::poly::{factor, FactorOptions};
use dynlin_core::{Field, Polynomial};
use std::hint::black_box;

fn fields() -> Vec<(&'static str, Field)> {
    vec![("Q", Field::rationals()), ("F_5", Field::prime(5).unwrap()), ("F_3(t)", Field::rational_functions(3).unwrap())]
}

fn bench_minimal_polynomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_polynomial");
    for (name, f) in fields() {
        // rational function entries swell quickly under a dense conjugation
        let sizes: &[usize] = if f.is_finite() || name == "Q" { &[4, 8, 12] } else { &[4, 6, 8] };
        for &n in sizes {
            let t = layered(&f, n, 7);
            group.bench_with_input(BenchmarkId::new(name, n), &t, |b, t| b.iter(|| minimal_polynomial(black_box(t))));
        }
    }
    group.finish();
}

fn bench_canonical_form(c: &mut Criterion) {
    let opts = FactorOptions::default();
    let mut group = c.benchmark_group("canonical_form");
    group.sample_size(20);
    for (name, f) in fields().into_iter().take(2) {
        for n in [4, 8] {
            let t = layered(&f, n, 11);
            group.bench_with_input(BenchmarkId::new(name, n), &t, |b, t| b.iter(|| canonical_form(black_box(t), &opts)));
        }
    }
    group.finish();
}

fn bench_conjugacy(c: &mut Criterion) {
    let opts = FactorOptions::default();
    let f = Field::prime(5).unwrap();
    let t = layered(&f, 8, 3);
    let g = random_invertible(&f, 8, &mut rng(4));
    let u = g.mul(&t).mul(&g.inverse().unwrap());
    c.bench_function("conjugacy_test/F_5/8", |b| b.iter(|| conjugacy_test(black_box(&t), black_box(&u), &opts)));
}

fn bench_factor(c: &mut Criterion) {
    let opts = FactorOptions::default();
    let mut group = c.benchmark_group("factor");
    let q = Field::rationals();
    // (x^2 - 2)(x^3 - x - 1)(x^4 + 1)
    let over_q = Polynomial::from_i64(&q, &[-2, 0, 1])
        .mul(&Polynomial::from_i64(&q, &[-1, -1, 0, 1]))
        .mul(&Polynomial::from_i64(&q, &[1, 0, 0, 0, 1]));
    group.bench_function("Q/deg9", |b| b.iter(|| factor(black_box(&over_q), &opts)));
    let f7 = Field::prime(7).unwrap();
    let x24 = Polynomial::monomial(&f7, f7.one(), 24).sub(&Polynomial::one(&f7));
    group.bench_function("F_7/x^24-1", |b| b.iter(|| factor(black_box(&x24), &opts)));
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("bruteforce_conjugacy");
    group.sample_size(10);
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        group.bench_function(BenchmarkId::new(format!("F_{p}"), n), |b| b.iter(|| bruteforce_conjugacy(p, n)));
    }
    group.finish();
}

criterion_group!(benches, bench_minimal_polynomial, bench_canonical_form, bench_conjugacy, bench_factor, bench_oracle);
criterion_main!(benches);
