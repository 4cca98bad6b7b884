use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rdsforge::bent::{bent_from_apn, walsh};
use rdsforge::diff::{diff_spectrum, image_profile, is_apn};
use rdsforge::rds::difference_counts;
use rdsforge_bench::{cubic_family, field, x3x4};

fn bench_field_ops(c: &mut Criterion) {
    let spec = field(13);
    let mask = (spec.size() - 1) as u32;
    c.bench_function("fmul/gf13", |b| {
        let mut x = 0x1234u32 & mask;
        b.iter(|| {
            x = spec.mul(black_box(x | 1), black_box(0x0ace & mask));
            x
        })
    });
    c.bench_function("fpow/gf13", |b| {
        b.iter(|| spec.pow(black_box(0x0bad & mask | 1), black_box(513)))
    });
    c.bench_function("trace/gf13", |b| b.iter(|| spec.trace(black_box(0x7ff))));
}

fn bench_diff_passes(c: &mut Criterion) {
    let mut group = c.benchmark_group("differential");
    for n in [7u32, 9, 11] {
        let f = cubic_family(n);
        group.bench_with_input(BenchmarkId::new("is_apn", n), &f, |b, f| {
            b.iter(|| is_apn(black_box(f)))
        });
        group.bench_with_input(BenchmarkId::new("diff_spectrum", n), &f, |b, f| {
            b.iter(|| diff_spectrum(black_box(f)))
        });
    }
    group.finish();
}

fn bench_rds(c: &mut Criterion) {
    let mut group = c.benchmark_group("difference_counts");
    for n in [9u32, 11, 13] {
        let image = image_profile(&x3x4(n)).image;
        group.bench_with_input(BenchmarkId::from_parameter(n), &image, |b, image| {
            b.iter(|| difference_counts(black_box(image), n).unwrap())
        });
    }
    group.finish();
}

fn bench_walsh(c: &mut Criterion) {
    let spec = field(13);
    let f = bent_from_apn(spec, 1).unwrap();
    c.bench_function("walsh/m12", |b| b.iter(|| walsh(black_box(&f))));
}

criterion_group!(benches, bench_field_ops, bench_diff_passes, bench_rds, bench_walsh);
criterion_main!(benches);
