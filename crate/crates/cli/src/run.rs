use std::path::PathBuf;

use anyhow::{Context, Result};
use hybridflow_core::experiment::velocity_fields;
use hybridflow_core::{
    build_initial, extract_slice, l2_distance, total_mass, total_momentum, Execution, Field2D, FluidModel,
    FluidSolver, FluidState, Grid2D, KineticSolver, KineticState, TimeStep,
};
use log::info;

use crate::config::{Duration, ModelKind, RunPlan};
use crate::output::{num, write_combined_slices, write_field, write_rows, write_slice};

/// Macroscopic state of one model at one recorded step.
pub struct Record {
    pub step: usize,
    pub time: f64,
    pub mass: f64,
    pub momentum: [f64; 2],
    pub rho: Field2D,
    pub ux: Field2D,
    pub uy: Field2D,
}

pub struct ModelRun {
    pub model: ModelKind,
    pub records: Vec<Record>,
    pub steps: usize,
}

trait Runner {
    fn proposed_dt(&self) -> Result<f64>;
    fn step(&mut self, dt: f64) -> Result<()>;
    fn time(&self) -> f64;
    fn macroscopic(&self) -> Result<FluidState>;
}

struct FluidRunner {
    solver: FluidSolver,
    state: FluidState,
}

impl Runner for FluidRunner {
    fn proposed_dt(&self) -> Result<f64> {
        Ok(self.solver.time_step(&self.state))
    }
    fn step(&mut self, dt: f64) -> Result<()> {
        Ok(self.solver.step(&mut self.state, dt)?)
    }
    fn time(&self) -> f64 {
        self.state.time
    }
    fn macroscopic(&self) -> Result<FluidState> {
        Ok(self.state.clone())
    }
}

struct KineticRunner {
    solver: KineticSolver,
    state: KineticState,
    cfl_limit: f64,
}

impl Runner for KineticRunner {
    fn proposed_dt(&self) -> Result<f64> {
        Ok(self.solver.time_step())
    }
    fn step(&mut self, dt: f64) -> Result<()> {
        let m = (self.solver.cfl_number(dt) / self.cfl_limit).ceil().max(1.0) as usize;
        let sub = dt / m as f64;
        for _ in 0..m {
            self.solver.step(&mut self.state, sub)?;
        }
        Ok(())
    }
    fn time(&self) -> f64 {
        self.state.time
    }
    fn macroscopic(&self) -> Result<FluidState> {
        Ok(self.state.moments(self.solver.grid(), self.solver.velocity_grid())?)
    }
}

fn record(step: usize, state: &FluidState, grid: &Grid2D) -> Record {
    let (ux, uy) = velocity_fields(state, grid);
    Record {
        step,
        time: state.time,
        mass: total_mass(state, grid),
        momentum: total_momentum(state, grid),
        rho: state.rho.clone(),
        ux,
        uy,
    }
}

/// Runs every requested model in turn and writes all artifacts.
pub fn run(plan: &RunPlan, exec: Execution) -> Result<Vec<ModelRun>> {
    std::fs::create_dir_all(&plan.out_dir).with_context(|| format!("creating {}", plan.out_dir.display()))?;
    let echo = toml::to_string(&plan.echo)?;
    std::fs::write(plan.out_dir.join("resolved_config.toml"), echo)?;

    let grid = plan.experiment.grid(plan.nx, plan.ny)?;
    let needs_kinetic = plan.models.contains(&ModelKind::Bgk);
    let (fluid0, kinetic0) = build_initial(
        &plan.experiment,
        &grid,
        &plan.params,
        needs_kinetic.then_some(&plan.vgrid),
    )?;

    let mut runs = Vec::new();
    let mut finals = Vec::new();
    for &model in &plan.models {
        let mut runner: Box<dyn Runner> = match model {
            ModelKind::Bgk => Box::new(KineticRunner {
                solver: KineticSolver::new(grid.clone(), plan.vgrid.clone(), plan.params)?.with_execution(exec),
                state: kinetic0.clone().expect("kinetic state built when bgk is requested"),
                cfl_limit: plan.kinetic_cfl,
            }),
            _ => {
                let fm = match model {
                    ModelKind::Euler => FluidModel::Euler,
                    ModelKind::Ns => FluidModel::NavierStokes,
                    _ => FluidModel::Hybrid,
                };
                Box::new(FluidRunner {
                    solver: FluidSolver::new(grid.clone(), plan.params, fm)?.with_execution(exec),
                    state: fluid0.clone(),
                })
            }
        };
        info!("running {} on {}x{}", model.name(), plan.nx, plan.ny);
        let (run, last) = drive(plan, model, runner.as_mut(), &grid)?;
        info!("{}: {} steps, t = {}", model.name(), run.steps, last.time);
        finals.push((model, last));
        runs.push(run);
    }

    let slices: Vec<_> = finals
        .iter()
        .map(|(m, s)| extract_slice(s, &grid, plan.slice_x).map(|sl| (m.name(), sl)))
        .collect::<Result<_, _>>()?;
    let refs: Vec<_> = slices.iter().map(|(n, s)| (*n, s)).collect();
    write_combined_slices(&plan.out_dir.join("slices_final.csv"), &refs)?;
    write_metrics(plan, &runs, &grid)?;
    Ok(runs)
}

fn drive(plan: &RunPlan, model: ModelKind, runner: &mut dyn Runner, grid: &Grid2D) -> Result<(ModelRun, FluidState)> {
    let name = model.name();
    let mut records = Vec::new();
    let mut step = 0usize;
    let save = |step: usize, state: &FluidState, records: &mut Vec<Record>| -> Result<()> {
        write_field(&artifact(plan, name, "field", step), state, grid)?;
        let slice = extract_slice(state, grid, plan.slice_x)?;
        write_slice(&artifact(plan, name, "slice", step), &slice)?;
        records.push(record(step, state, grid));
        Ok(())
    };
    let initial = runner.macroscopic().with_context(|| format!("model {name}: invalid initial state"))?;
    save(0, &initial, &mut records)?;

    loop {
        let mut dt = runner.proposed_dt()?;
        match plan.duration {
            Duration::Steps(n) if step >= n => break,
            Duration::Until(tf) => {
                let remaining = tf - runner.time();
                if remaining <= 1e-9 * dt {
                    break;
                }
                dt = dt.min(remaining);
            }
            _ => {}
        }
        runner
            .step(dt)
            .with_context(|| format!("model {name} aborted at step {} (t = {})", step + 1, runner.time()))?;
        step += 1;
        if plan.snapshot_every > 0 && step.is_multiple_of(plan.snapshot_every) {
            let s = runner.macroscopic().with_context(|| format!("model {name} at step {step}"))?;
            save(step, &s, &mut records)?;
        }
    }
    let last = runner.macroscopic().with_context(|| format!("model {name} at step {step}"))?;
    if records.last().map(|r| r.step) != Some(step) {
        save(step, &last, &mut records)?;
    }
    Ok((ModelRun { model, records, steps: step }, last))
}

fn artifact(plan: &RunPlan, model: &str, kind: &str, step: usize) -> PathBuf {
    plan.out_dir.join(format!("{model}_{kind}_{step:06}.csv"))
}

/// Per-model `metrics_<model>.csv`: conservation series plus L2 distances
/// of `(rho, ux, uy)` to every other model at the same record.
fn write_metrics(plan: &RunPlan, runs: &[ModelRun], grid: &Grid2D) -> Result<()> {
    for (a, run) in runs.iter().enumerate() {
        let mut header: Vec<String> = ["step", "time", "mass", "momx", "momy"].map(String::from).to_vec();
        for (b, other) in runs.iter().enumerate() {
            if a != b {
                header.extend(["rho", "ux", "uy"].map(|q| format!("l2_{q}_{}", other.model.name())));
            }
        }
        let mut rows = Vec::new();
        for (k, r) in run.records.iter().enumerate() {
            let mut row = vec![r.step.to_string(), num(r.time), num(r.mass), num(r.momentum[0]), num(r.momentum[1])];
            for (b, other) in runs.iter().enumerate() {
                if a == b {
                    continue;
                }
                match other.records.get(k) {
                    Some(o) => {
                        row.push(num(l2_distance(&r.rho, &o.rho, grid)?));
                        row.push(num(l2_distance(&r.ux, &o.ux, grid)?));
                        row.push(num(l2_distance(&r.uy, &o.uy, grid)?));
                    }
                    None => row.extend(std::iter::repeat_n(String::new(), 3)),
                }
            }
            rows.push(row);
        }
        write_rows(&plan.out_dir.join(format!("metrics_{}.csv", run.model.name())), &header, &rows)?;
    }
    Ok(())
}

/// Time step the fluid solvers would take first; used for logging only.
pub fn describe_step(plan: &RunPlan) -> String {
    match plan.params.time_step {
        TimeStep::Fixed(dt) => format!("dt = {dt}"),
        TimeStep::Cfl(c) => format!("cfl = {c}"),
    }
}
