//! Parallel vs sequential timing on the real per-cell workloads, plus codec
//! throughput. Run with `cargo bench`, or `cargo bench --no-default-features`
//! to time the build without rayon.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sfcscan::dipole::{dipole_field_at, reference_config_at};
use sfcscan::par::{map_indices, map_indices_seq};
use sfcscan::pulse::{pulse_unitary, PulseSpec};
use sfcscan::sfc::{
    generate_trajectory, hilbert_cell_to_index, hilbert_index_to_cell, CurveOrder, ScanKind,
};
use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

fn bench_field_map(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_map");
    for grid_n in [64u32, 128] {
        let config = reference_config_at(grid_n);
        let total = (grid_n as usize) * (grid_n as usize);
        let cell = |idx: usize| {
            let i = (idx % grid_n as usize) as u32;
            let j = (idx / grid_n as usize) as u32;
            dipole_field_at(&config.dipoles, config.sample_point(i, j)).unwrap()
        };
        group.bench_with_input(BenchmarkId::new("parallel", grid_n), &total, |b, &n| {
            b.iter(|| black_box(map_indices(n, cell)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", grid_n), &total, |b, &n| {
            b.iter(|| black_box(map_indices_seq(n, cell)))
        });
    }
    group.finish();
}

fn bench_scan_objective(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_objective");
    let order = CurveOrder::new(6).unwrap();
    let trajectory = generate_trajectory(ScanKind::Hilbert, order, 0);
    let cell_width = 4.0 / order.side() as f64;
    let eval = |step: usize| {
        let cell = trajectory.cells()[step];
        let ex = (cell.x as f64 + 0.5) * cell_width;
        let v = pulse_unitary(&PulseSpec {
            coupling: ex,
            phase: FRAC_PI_4,
        });
        v.rows[1][0].norm_sqr()
    };
    let total = trajectory.len();
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(map_indices(total, eval)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(map_indices_seq(total, eval)))
    });
    group.finish();
}

fn bench_codec(c: &mut Criterion) {
    let order = CurveOrder::new(8).unwrap();
    c.bench_function("codec/roundtrip_order8", |b| {
        b.iter(|| {
            for d in 0..order.cell_count() {
                let cell = hilbert_index_to_cell(black_box(d), order).unwrap();
                black_box(hilbert_cell_to_index(cell, order).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_field_map, bench_scan_objective, bench_codec);
criterion_main!(benches);
