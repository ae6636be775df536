use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use sorank::linalg::rank_of_slice;
use sorank::{
    ball_size_exact, construct_so_code, count_roots_brute, enumerate_ball, rng_from_seed,
    sample_from_ball, Ambient, BallSpec, Field, QuadraticForm, Repr,
};

fn field_mul(c: &mut Criterion) {
    for q in [5u32, 256] {
        let f = Field::gf(q).unwrap();
        let xs: Vec<u32> = (0..1024).map(|i| i % q).collect();
        c.bench_function(&format!("field_mul_gf{q}_x1024"), |b| {
            b.iter(|| xs.iter().fold(1, |acc, &x| f.mul(acc, black_box(x)) ^ 1))
        });
    }
}

fn rank(c: &mut Criterion) {
    let f = Field::gf(2).unwrap();
    let mut rng = rng_from_seed(1);
    let data: Vec<u32> = (0..16 * 32).map(|_| f.random(&mut rng)).collect();
    c.bench_function("rank_16x32_gf2", |b| {
        b.iter(|| rank_of_slice(&f, black_box(&data), 16, 32))
    });
}

fn balls(c: &mut Criterion) {
    let amb = Ambient::from_params(Repr::Matrix, 2, 3, 4).unwrap();
    let spec = BallSpec::at_zero(amb, 2).unwrap();
    c.bench_function("enumerate_ball_gf2_3x4_r2", |b| {
        b.iter(|| enumerate_ball(&spec).unwrap().count())
    });
    let mut rng = rng_from_seed(2);
    c.bench_function("sample_from_ball_gf2_3x4_r2", |b| {
        b.iter(|| sample_from_ball(&spec, &mut rng))
    });
    c.bench_function("ball_size_exact_gf4_30x40_r15", |b| {
        b.iter(|| ball_size_exact(30, 40, 4, 15).unwrap())
    });
}

fn roots(c: &mut Criterion) {
    let f = std::sync::Arc::new(Field::gf(5).unwrap());
    let form = QuadraticForm::random(f, 4, &mut rng_from_seed(3));
    c.bench_function("count_roots_brute_gf5_n4", |b| {
        b.iter(|| count_roots_brute(&form).unwrap())
    });
}

fn construction(c: &mut Criterion) {
    for (repr, q, n, m, k) in [
        (Repr::Matrix, 2, 2, 4, 3),
        (Repr::Matrix, 3, 3, 3, 4),
        (Repr::Vector, 4, 5, 2, 2),
    ] {
        let amb = Ambient::from_params(repr, q, n, m).unwrap();
        let mut seed = 0u64;
        c.bench_function(&format!("construct_{repr}_q{q}_n{n}_m{m}_k{k}"), |b| {
            b.iter_batched(
                || {
                    seed += 1;
                    rng_from_seed(seed)
                },
                |mut rng| construct_so_code(&amb, k, &mut rng).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
}

criterion_group!(benches, field_mul, rank, balls, roots, construction);
criterion_main!(benches);
