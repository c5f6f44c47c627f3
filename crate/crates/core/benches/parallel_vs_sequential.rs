use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nonclass_core::dicke::{build_hamiltonian, DickeConfig};
use nonclass_core::{
    maximize_en, maximize_en_over_theta, CenteredMoments, Execution, GridSpec, SqueezedCoherentParams,
};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn splitter_search(c: &mut Criterion) {
    let r: f64 = 1.0;
    let input = CenteredMoments::new(r.cosh() * r.sinh(), PI, r.sinh().powi(2)).unwrap();
    let grid = GridSpec::default();
    let mut group = c.benchmark_group("maximize_en");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| maximize_en(black_box(&input), &grid, exec).unwrap())
        });
    }
    group.finish();
}

fn angle_search(c: &mut Criterion) {
    let params = SqueezedCoherentParams::squeezed_vacuum(0.8, 0.0).unwrap();
    let grid = GridSpec { theta_points: 16, ..GridSpec::default() };
    let mut group = c.benchmark_group("maximize_en_over_theta");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| maximize_en_over_theta(black_box(&params), &grid, exec).unwrap())
        });
    }
    group.finish();
}

fn hamiltonian_product(c: &mut Criterion) {
    let cfg = DickeConfig { g: 1.5, ..DickeConfig::default() };
    let h = build_hamiltonian(&cfg).unwrap();
    let x: Vec<f64> = (0..h.dim()).map(|i| ((i % 17) as f64 - 8.0) / 8.0).collect();
    let mut y = vec![0.0; h.dim()];
    let mut group = c.benchmark_group("dicke_matvec");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| h.apply_into(black_box(&x), &mut y, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, splitter_search, angle_search, hamiltonian_product);
criterion_main!(benches);
