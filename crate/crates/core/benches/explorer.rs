use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symmwell::explorer::{
    antipt3_path, find_ep, map_2mode_region, map_3mode_region, sweep_3mode_antipt, Branch, EpOptions, Execution,
    PlaneSpec,
};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn map2(c: &mut Criterion) {
    let mut g = c.benchmark_group("map2_201x201");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| map_2mode_region((-2.0, 2.0), (-2.0, 2.0), (201, 201), 1.0, Branch::default(), black_box(exec)))
        });
    }
    g.finish();
}

fn map3(c: &mut Criterion) {
    let plane = PlaneSpec { fixed_axis: 2, fixed_value: 0.0, u_range: (-1.5, 1.5), v_range: (-1.5, 1.5) };
    let mut g = c.benchmark_group("map3_121x121");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| map_3mode_region(plane, (121, 121), 1.0, black_box(exec)))
        });
    }
    g.finish();
}

fn sweep3(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep3_antipt_4001");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep_3mode_antipt((-1.2, 1.2), 4001, 1.0, true, black_box(exec)))
        });
    }
    g.finish();
}

fn ep3(c: &mut Criterion) {
    let path = antipt3_path(1.0, true);
    let mut g = c.benchmark_group("find_ep_antipt");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| find_ep(&path, (0.2, 0.8), EpOptions { exec: black_box(exec), ..EpOptions::default() }))
        });
    }
    g.finish();
}

criterion_group!(benches, map2, map3, sweep3, ep3);
criterion_main!(benches);
