#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use hybridflow_core::{init_thread_pool, Execution};
use log::{error, info};

mod config;
mod output;
mod run;
mod stability_cmd;

use config::{FileConfig, ModelKind};
use stability_cmd::{Range, SweepArgs};

/// Run the isothermal Euler, Navier-Stokes, hybrid and BGK solvers on the
/// benchmark problems, or map the linear stability of the hybrid model.
#[derive(Parser, Debug)]
#[command(name = "hybridflow", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify plane-wave perturbations over a (k, theta, u0) grid.
    Stability(StabilityArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Built-in experiment: oscillating, couette or vortex.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Run file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated subset of euler,ns,hmm,bgk.
    #[arg(long, value_delimiter = ',')]
    models: Option<Vec<String>>,
    #[arg(long)]
    tau: Option<f64>,
    /// Hybrid-model coefficient (default tau/3).
    #[arg(long)]
    tau_hmm: Option<f64>,
    /// Navier-Stokes viscosity scale (default tau).
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long, conflicts_with = "cfl")]
    dt: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long, conflicts_with = "t_final")]
    steps: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write fields every N steps (0: initial and final only).
    #[arg(long)]
    snapshot_every: Option<usize>,
    #[arg(long)]
    slice_x: Option<f64>,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    /// Base flow speed; several values may be given separated by commas.
    #[arg(long, value_delimiter = ',', default_value = "8")]
    u0: Vec<f64>,
    #[arg(long = "T", default_value_t = 1.0)]
    temperature: f64,
    #[arg(long, default_value_t = 0.01)]
    tau: f64,
    /// Wavenumbers as min:max:n.
    #[arg(long, default_value = "0.1:10:50")]
    k_range: Range,
    /// Angles as min:max:n; bounds accept a `pi` suffix.
    #[arg(long, default_value = "0:pi:181")]
    theta_range: Range,
    #[arg(long, default_value = "stability.csv")]
    out: PathBuf,
}

impl RunArgs {
    fn overrides(&self) -> FileConfig {
        let mut c = FileConfig::default();
        c.experiment.models = self.models.clone();
        c.grid.nx = self.nx;
        c.grid.ny = self.ny;
        c.physics.tau = self.tau;
        c.physics.tau_hmm = self.tau_hmm;
        c.physics.eps_ns = self.eps;
        c.time.dt = self.dt;
        c.time.cfl = self.cfl;
        c.time.steps = self.steps;
        c.time.t_final = self.t_final;
        c.output.dir = self.out.clone();
        c.output.snapshot_every = self.snapshot_every;
        c.output.slice_x = self.slice_x;
        c
    }

    fn base(&self) -> Result<FileConfig> {
        match (&self.preset, &self.config) {
            (Some(p), None) => config::preset(p),
            (None, Some(path)) => config::load(path),
            (None, None) => config::preset("oscillating"),
            (Some(_), Some(_)) => bail!("--preset and --config are mutually exclusive"),
        }
    }
}

fn run_experiment(args: &RunArgs, exec: Execution) -> Result<()> {
    let file = args.base()?;
    let plan = file.merge(args.overrides()).resolve()?;
    let names: Vec<_> = plan.models.iter().map(|m: &ModelKind| m.name()).collect();
    info!(
        "{} on {}x{}, models {}, {}, output in {}",
        plan.experiment,
        plan.nx,
        plan.ny,
        names.join(","),
        run::describe_step(&plan),
        plan.out_dir.display()
    );
    let runs = run::run(&plan, exec)?;
    for r in &runs {
        let last = r.records.last().expect("final record");
        println!(
            "{:<6} steps {:>6}  t = {:.6}  mass = {:.12}",
            r.model.name(),
            r.steps,
            last.time,
            last.mass
        );
    }
    println!("wrote {}", plan.out_dir.display());
    Ok(())
}

fn run_stability(args: &StabilityArgs, exec: Execution) -> Result<()> {
    let sweep = SweepArgs {
        u0: args.u0.clone(),
        temperature: args.temperature,
        tau: args.tau,
        k: args.k_range,
        theta: args.theta_range,
    };
    let s = stability_cmd::run(&sweep, &args.out, exec)?;
    for line in stability_cmd::describe_thresholds(&args.u0, args.temperature) {
        println!("{line}");
    }
    println!(
        "{} rows: {} stable, {} marginal, {} unstable, {} criterion disagreements -> {}",
        s.rows,
        s.stable,
        s.marginal,
        s.unstable,
        s.disagreements,
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = init_thread_pool(n) {
            error!("cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = match &cli.command {
        Some(Command::Stability(a)) => run_stability(a, exec),
        None => run_experiment(&cli.run, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
