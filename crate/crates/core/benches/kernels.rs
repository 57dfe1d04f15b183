use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hybridflow_core::stability::{linspace, stability_sweep};
use hybridflow_core::{build_initial, Execution, Experiment, FluidModel, FluidSolver, KineticSolver, ModelParams, VelocityGrid};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn params() -> ModelParams {
    ModelParams {
        tau: 0.01,
        tau_hmm: 0.01 / 3.0,
        eps_ns: 0.01,
        ..Default::default()
    }
}

fn fluid_step(c: &mut Criterion) {
    let exp = Experiment::Oscillating;
    let mut group = c.benchmark_group("fluid_step");
    for (nx, ny) in [(64, 128), (128, 256)] {
        let grid = exp.grid(nx, ny).unwrap();
        let (s0, _) = build_initial(&exp, &grid, &params(), None).unwrap();
        for model in [FluidModel::Euler, FluidModel::Hybrid] {
            for (name, exec) in MODES {
                let solver = FluidSolver::new(grid.clone(), params(), model).unwrap().with_execution(exec);
                let id = BenchmarkId::new(format!("{}/{name}", model.name()), format!("{nx}x{ny}"));
                group.bench_function(id, |b| {
                    let mut s = s0.clone();
                    b.iter(|| solver.step(black_box(&mut s), 1e-5).unwrap());
                });
            }
        }
    }
    group.finish();
}

fn kinetic_step(c: &mut Criterion) {
    let exp = Experiment::Oscillating;
    let grid = exp.grid(32, 64).unwrap();
    let vgrid = VelocityGrid::default();
    let (_, k0) = build_initial(&exp, &grid, &params(), Some(&vgrid)).unwrap();
    let k0 = k0.unwrap();
    let mut group = c.benchmark_group("kinetic_step");
    group.sample_size(20);
    for (name, exec) in MODES {
        let solver = KineticSolver::new(grid.clone(), vgrid.clone(), params()).unwrap().with_execution(exec);
        group.bench_function(BenchmarkId::new(name, "32x64"), |b| {
            let mut s = k0.clone();
            b.iter(|| solver.step(black_box(&mut s), 1e-4).unwrap());
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let ks = linspace(0.1, 10.0, 50);
    let thetas = linspace(0.0, std::f64::consts::PI, 181);
    let mut group = c.benchmark_group("stability_sweep");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| stability_sweep(black_box(&ks), &thetas, &[1.0, 4.0, 8.0], 1.0, 0.01, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, fluid_step, kinetic_step, sweep);
criterion_main!(benches);
