// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pulseforge::analysis::{infidelity_sweep, SweepConfig};
use pulseforge::solver::{build_sequence, c1_bounds, robustness_residual, Branch, TargetRotation};
use pulseforge::{Execution, WindingNumbers};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn gate_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("infidelity_sweep");
    for points in [101, 1001, 10_001] {
        for (name, mode) in MODES {
            let config = SweepConfig::new(PI, WindingNumbers::new(1, 0, 0), 0.1, points).with_execution(mode);
            group.bench_with_input(BenchmarkId::new(name, points), &config, |b, cfg| {
                b.iter(|| infidelity_sweep(black_box(cfg)).unwrap())
            });
        }
    }
    group.finish();
}

fn manifold_check(c: &mut Criterion) {
    // residual of every (θ, c₁) pair on a 200 × 200 grid
    let thetas: Vec<f64> = (0..200).map(|j| 2.0 * PI * (j as f64 + 0.5) / 200.0).collect();
    let mut group = c.benchmark_group("manifold_residuals");
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                mode.map(&thetas, |&theta| {
                    let t = TargetRotation::new(theta, 0.0).unwrap();
                    let w = WindingNumbers::default();
                    c1_bounds(t.c(), w.parity())
                        .interior_grid(200)
                        .into_iter()
                        .map(|c1| robustness_residual(build_sequence(t, c1, w, Branch::Plus).unwrap().pulses()))
                        .fold(0.0, f64::max)
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, gate_sweep, manifold_check);
criterion_main!(benches);
