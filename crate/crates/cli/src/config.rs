use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hybridflow_core::experiment::CustomSetup;
use hybridflow_core::{Experiment, ModelParams, TimeStep, VelocityGrid};
use serde::{Deserialize, Serialize};

/// Contents of a run file. Every key is optional; missing keys fall back to
/// the experiment's reference values.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub physics: PhysicsSection,
    #[serde(default)]
    pub time: TimeSection,
    #[serde(default)]
    pub velocity: VelocitySection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<CustomSection>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub models: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ny: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PhysicsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_gas: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_hmm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_ns: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cfl: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    /// Courant limit for the kinetic transport; larger steps are subdivided.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kinetic_cfl: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VelocitySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nvx: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nvy: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vmax: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    /// Write fields every this many steps; 0 keeps only the initial and final state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_x: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CustomSection {
    pub x_range: Option<[f64; 2]>,
    pub y_range: Option<[f64; 2]>,
    pub rho0: Option<f64>,
    pub amplitude: Option<f64>,
    pub modes: Option<[f64; 2]>,
    pub velocity: Option<[f64; 2]>,
}

pub const PRESETS: [(&str, &str); 3] = [
    ("oscillating", include_str!("../presets/oscillating.toml")),
    ("couette", include_str!("../presets/couette.toml")),
    ("vortex", include_str!("../presets/vortex.toml")),
];

pub fn preset(name: &str) -> Result<FileConfig> {
    let text = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .with_context(|| {
            let names: Vec<_> = PRESETS.iter().map(|(n, _)| *n).collect();
            format!("unknown preset `{name}` (available: {})", names.join(", "))
        })?;
    parse(text).with_context(|| format!("preset `{name}`"))
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse(text: &str) -> Result<FileConfig> {
    Ok(toml::from_str(text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Euler,
    Ns,
    Hmm,
    Bgk,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Euler => "euler",
            ModelKind::Ns => "ns",
            ModelKind::Hmm => "hmm",
            ModelKind::Bgk => "bgk",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "euler" => ModelKind::Euler,
            "ns" | "navier-stokes" => ModelKind::Ns,
            "hmm" | "hybrid" => ModelKind::Hmm,
            "bgk" | "kinetic" => ModelKind::Bgk,
            other => bail!("unknown model `{other}` (expected euler, ns, hmm or bgk)"),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Duration {
    Steps(usize),
    Until(f64),
}

/// Fully resolved run description.
#[derive(Clone, Debug)]
pub struct RunPlan {
    pub experiment: Experiment,
    pub models: Vec<ModelKind>,
    pub nx: usize,
    pub ny: usize,
    pub params: ModelParams,
    pub duration: Duration,
    pub kinetic_cfl: f64,
    pub vgrid: VelocityGrid,
    pub out_dir: PathBuf,
    pub snapshot_every: usize,
    pub slice_x: f64,
    /// Echo of every value actually used, loadable as a run file.
    pub echo: FileConfig,
}

pub const DEFAULT_KINETIC_CFL: f64 = 0.5;

impl FileConfig {
    /// Overlays `other` onto `self`: every key set in `other` wins. Setting
    /// one of `dt`/`cfl` (or `steps`/`t_final`) clears its alternative.
    pub fn merge(mut self, other: FileConfig) -> FileConfig {
        macro_rules! take {
            ($($sec:ident . $key:ident),* $(,)?) => {
                $( if other.$sec.$key.is_some() { self.$sec.$key = other.$sec.$key.clone(); } )*
            };
        }
        if other.time.dt.is_some() {
            self.time.cfl = None;
        }
        if other.time.cfl.is_some() {
            self.time.dt = None;
        }
        if other.time.steps.is_some() {
            self.time.t_final = None;
        }
        if other.time.t_final.is_some() {
            self.time.steps = None;
        }
        take!(
            experiment.name,
            experiment.models,
            grid.nx,
            grid.ny,
            physics.r_gas,
            physics.temperature,
            physics.tau,
            physics.tau_hmm,
            physics.eps_ns,
            time.dt,
            time.cfl,
            time.steps,
            time.t_final,
            time.kinetic_cfl,
            velocity.nvx,
            velocity.nvy,
            velocity.vmax,
            output.dir,
            output.snapshot_every,
            output.slice_x,
        );
        if other.custom.is_some() {
            self.custom = other.custom;
        }
        self
    }

    pub fn resolve(&self) -> Result<RunPlan> {
        let name = self.experiment.name.as_deref().unwrap_or("oscillating");
        let mut experiment: Experiment = name.parse()?;
        if let Experiment::Custom(setup) = &mut experiment {
            let c = self.custom.clone().unwrap_or_default();
            let d = CustomSetup::default();
            *setup = CustomSetup {
                x_range: c.x_range.map_or(d.x_range, |r| (r[0], r[1])),
                y_range: c.y_range.map_or(d.y_range, |r| (r[0], r[1])),
                rho0: c.rho0.unwrap_or(d.rho0),
                amplitude: c.amplitude.unwrap_or(d.amplitude),
                modes: c.modes.map_or(d.modes, |m| (m[0], m[1])),
                velocity: c.velocity.map_or(d.velocity, |v| (v[0], v[1])),
            };
        } else if self.custom.is_some() {
            bail!("[custom] section given for the `{name}` experiment");
        }
        let defaults = experiment.defaults();

        let model_names = self
            .experiment
            .models
            .clone()
            .unwrap_or_else(|| vec!["euler".into(), "ns".into(), "hmm".into(), "bgk".into()]);
        let mut models = Vec::new();
        for m in &model_names {
            let k = ModelKind::parse(m)?;
            if models.contains(&k) {
                bail!("model `{}` listed twice", k.name());
            }
            models.push(k);
        }
        if models.is_empty() {
            bail!("no models selected");
        }

        let nx = self.grid.nx.unwrap_or(defaults.nx);
        let ny = self.grid.ny.unwrap_or(defaults.ny);
        let tau = self.physics.tau.unwrap_or(0.0);
        let time_step = match (self.time.dt, self.time.cfl) {
            (Some(_), Some(_)) => bail!("give either dt or cfl, not both"),
            (None, Some(c)) => TimeStep::Cfl(c),
            (Some(dt), None) => TimeStep::Fixed(dt),
            (None, None) => TimeStep::Fixed(defaults.dt),
        };
        let params = ModelParams {
            r_gas: self.physics.r_gas.unwrap_or(1.0),
            temperature: self.physics.temperature.unwrap_or(1.0),
            tau,
            tau_hmm: self.physics.tau_hmm.unwrap_or(tau / 3.0),
            eps_ns: self.physics.eps_ns.unwrap_or(tau),
            time_step,
        };
        params.validate()?;
        let duration = match (self.time.steps, self.time.t_final) {
            (Some(_), Some(_)) => bail!("give either steps or t_final, not both"),
            (Some(n), None) => Duration::Steps(n),
            (None, Some(t)) => Duration::Until(t),
            (None, None) => match (defaults.steps, defaults.t_final) {
                (Some(n), _) => Duration::Steps(n),
                (None, Some(t)) => Duration::Until(t),
                (None, None) => Duration::Steps(100),
            },
        };
        if let Duration::Until(t) = duration {
            if !(t > 0.0 && t.is_finite()) {
                bail!("t_final must be positive, got {t}");
            }
        }
        let kinetic_cfl = self.time.kinetic_cfl.unwrap_or(DEFAULT_KINETIC_CFL);
        if !(kinetic_cfl > 0.0 && kinetic_cfl <= 1.0) {
            bail!("kinetic_cfl must lie in (0, 1], got {kinetic_cfl}");
        }
        let nvx = self.velocity.nvx.unwrap_or(20);
        let nvy = self.velocity.nvy.unwrap_or(20);
        let vmax = self.velocity.vmax.unwrap_or(5.0);
        let vgrid = VelocityGrid::new(nvx, nvy, (-vmax, vmax), (-vmax, vmax))?;
        let out_dir = self.output.dir.clone().unwrap_or_else(|| PathBuf::from(format!("out/{name}")));
        let snapshot_every = self.output.snapshot_every.unwrap_or(0);
        let slice_x = self.output.slice_x.unwrap_or(0.5);
        // validates extents and boundary setup early
        let grid = experiment.grid(nx, ny)?;
        let (x0, x1) = grid.x_range();
        if !(slice_x >= x0 && slice_x <= x1) {
            bail!("slice_x = {slice_x} outside [{x0}, {x1}]");
        }

        let echo = FileConfig {
            experiment: ExperimentSection {
                name: Some(experiment.name().to_string()),
                models: Some(models.iter().map(|m| m.name().to_string()).collect()),
            },
            grid: GridSection { nx: Some(nx), ny: Some(ny) },
            physics: PhysicsSection {
                r_gas: Some(params.r_gas),
                temperature: Some(params.temperature),
                tau: Some(params.tau),
                tau_hmm: Some(params.tau_hmm),
                eps_ns: Some(params.eps_ns),
            },
            time: TimeSection {
                dt: match time_step {
                    TimeStep::Fixed(dt) => Some(dt),
                    TimeStep::Cfl(_) => None,
                },
                cfl: match time_step {
                    TimeStep::Cfl(c) => Some(c),
                    TimeStep::Fixed(_) => None,
                },
                steps: match duration {
                    Duration::Steps(n) => Some(n),
                    Duration::Until(_) => None,
                },
                t_final: match duration {
                    Duration::Until(t) => Some(t),
                    Duration::Steps(_) => None,
                },
                kinetic_cfl: Some(kinetic_cfl),
            },
            velocity: VelocitySection {
                nvx: Some(nvx),
                nvy: Some(nvy),
                vmax: Some(vmax),
            },
            output: OutputSection {
                dir: Some(out_dir.clone()),
                snapshot_every: Some(snapshot_every),
                slice_x: Some(slice_x),
            },
            custom: match &experiment {
                Experiment::Custom(c) => Some(CustomSection {
                    x_range: Some([c.x_range.0, c.x_range.1]),
                    y_range: Some([c.y_range.0, c.y_range.1]),
                    rho0: Some(c.rho0),
                    amplitude: Some(c.amplitude),
                    modes: Some([c.modes.0, c.modes.1]),
                    velocity: Some([c.velocity.0, c.velocity.1]),
                }),
                _ => None,
            },
        };

        Ok(RunPlan {
            experiment,
            models,
            nx,
            ny,
            params,
            duration,
            kinetic_cfl,
            vgrid,
            out_dir,
            snapshot_every,
            slice_x,
            echo,
        })
    }
}
