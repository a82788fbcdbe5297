use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qenhance::{
    qdft_two_sided_fast, qdft_two_sided_naive, rgb_to_quaternion, sweep_qdft, AlphaGrid,
    MeasureConfig, PipelineConfig, RgbImage, ScalarPolicy,
};

fn random_image(h: usize, w: usize) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    RgbImage::from_fn(h, w, |_, _| {
        [
            rng.gen_range(0..=255u8) as f64,
            rng.gen_range(0..=255u8) as f64,
            rng.gen_range(0..=255u8) as f64,
        ]
    })
    .unwrap()
}

fn qdft(c: &mut Criterion) {
    let mut group = c.benchmark_group("qdft");
    for &(h, w) in &[(16, 16), (32, 32), (30, 45)] {
        let q = rgb_to_quaternion(&random_image(h, w), ScalarPolicy::Zero);
        let id = format!("{h}x{w}");
        group.bench_with_input(BenchmarkId::new("fast", &id), &q, |b, q| {
            b.iter(|| qdft_two_sided_fast(q))
        });
        group.bench_with_input(BenchmarkId::new("direct", &id), &q, |b, q| {
            b.iter(|| qdft_two_sided_naive(q))
        });
    }
    for &(h, w) in &[(256, 256), (427, 640)] {
        let q = rgb_to_quaternion(&random_image(h, w), ScalarPolicy::Zero);
        group.bench_with_input(BenchmarkId::new("fast", format!("{h}x{w}")), &q, |b, q| {
            b.iter(|| qdft_two_sided_fast(q))
        });
    }
    group.finish();
}

fn measures(c: &mut Criterion) {
    let img = random_image(512, 512);
    let cfg = MeasureConfig::default();
    c.bench_function("ceme 512x512", |b| b.iter(|| cfg.ceme(&img, None).unwrap()));
}

fn sweep(c: &mut Criterion) {
    let img = random_image(128, 128);
    let cfg = PipelineConfig {
        grid: AlphaGrid::default(),
        ..PipelineConfig::default()
    };
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("qdft 128x128, 21 alphas", |b| {
        b.iter(|| sweep_qdft(&img, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, qdft, measures, sweep);
criterion_main!(benches);
