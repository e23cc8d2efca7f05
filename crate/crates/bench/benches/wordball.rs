//! Hot-path benchmarks: the closed-form 2x2 SVD, word-ball enumeration
//! with incremental pair values, and the full parallel Cartan
//! classification of a rank-2 ball (the performance gate runs the
//! length-12 ball; the benches track smaller radii for quick feedback).

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use orthoklein::dynamics::word_ball_summary;
use orthoklein::klein::words::for_each_word;
use orthoklein::klein::GroupSpec;
use orthoklein::sample;
use orthoklein::{cartan_kak, svd2, C64, Mat2, PairElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn genus2() -> GroupSpec {
    let c = |re: f64| C64::new(re, 0.0);
    let s1 = Mat2::diag(c(3.0), c(1.0 / 3.0));
    let r = 1.0 / 2.0f64.sqrt();
    let m = Mat2::new(c(r), c(-r), c(r), c(r));
    GroupSpec::new(vec![s1, m * s1 * m.adjugate()]).unwrap()
}

fn bench_svd2(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mats: Vec<Mat2> = (0..1024).map(|_| sample::random_sl2(&mut rng)).collect();
    c.bench_function("svd2_1k", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for m in &mats {
                acc += svd2(black_box(m)).unwrap().sigma;
            }
            acc
        })
    });
}

fn bench_cartan(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs: Vec<PairElement> = (0..1024)
        .map(|_| {
            PairElement::new(sample::random_sl2(&mut rng), sample::random_sl2(&mut rng)).unwrap()
        })
        .collect();
    c.bench_function("cartan_kak_1k", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for p in &pairs {
                acc += cartan_kak(black_box(p)).unwrap().mu;
            }
            acc
        })
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let spec = genus2();
    let mut group = c.benchmark_group("word_ball");
    for max_len in [8usize, 10] {
        group.bench_with_input(
            BenchmarkId::new("enumerate", max_len),
            &max_len,
            |b, &len| {
                b.iter(|| {
                    let mut n = 0u64;
                    for_each_word(&spec, len, |_, p| {
                        n += 1;
                        black_box(&p.g);
                    });
                    n
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("classify", max_len),
            &max_len,
            |b, &len| b.iter(|| word_ball_summary(&spec, len)),
        );
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_svd2, bench_cartan, bench_enumeration
}
criterion_main!(benches);
