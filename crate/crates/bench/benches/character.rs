use criterion::{criterion_group, criterion_main, Criterion};
use futaki_core::character::{assemble_f_loc, compute_f, Dims, KahlerClass};
use futaki_core::explorer::{limit_l1, limit_l2, scan_range, ScanOptions};
use std::hint::black_box;

fn bench_compute_f(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_f");
    for (m, n) in [(1, 2), (4, 7), (9, 10)] {
        let d = Dims::new(m, n).unwrap();
        group.bench_function(format!("{m}x{n}"), |b| b.iter(|| compute_f(black_box(d)).unwrap()));
    }
    group.finish();
}

fn bench_assembly(c: &mut Criterion) {
    let d = Dims::new(3, 4).unwrap();
    let cls = KahlerClass::from_ints(5, -3, 7);
    c.bench_function("assemble_f_loc 3x4", |b| {
        b.iter(|| assemble_f_loc(black_box(d), black_box(&cls)).unwrap())
    });
}

fn bench_limits(c: &mut Criterion) {
    let d = Dims::new(9, 10).unwrap();
    c.bench_function("limits 9x10", |b| b.iter(|| (limit_l1(black_box(d)), limit_l2(black_box(d)))));
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("m1..3 n2..5", |b| {
        b.iter(|| scan_range(1, 3, 2, 5, &ScanOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_compute_f, bench_assembly, bench_limits, bench_scan);
criterion_main!(benches);
