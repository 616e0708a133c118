use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tilegeo::gg::{gg_solve, GeoPosition, GgLimits};
use tilegeo::reduce::reduce;
use tilegeo::tt::{solve, SolveLimits};
use tilegeo_bench::{instance, reduced_board};

const SIZES: [usize; 4] = [4, 8, 12, 16];

fn bench_reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    for n in SIZES {
        let g = instance(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| reduce(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn bench_gg(c: &mut Criterion) {
    let mut group = c.benchmark_group("gg_solve");
    for n in SIZES {
        let g = instance(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| gg_solve(&GeoPosition::start(black_box(g)).unwrap(), &GgLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_tt(c: &mut Criterion) {
    let mut group = c.benchmark_group("tt_solve");
    group.sample_size(20);
    for n in SIZES {
        let board = reduced_board(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &board, |b, board| {
            b.iter(|| solve(black_box(board), &SolveLimits::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_reduce, bench_gg, bench_tt);
criterion_main!(benches);
