//! Benchmark setups and the comparison helpers used on their outputs.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{config, Error, Result};
use crate::field::{Field2D, FluidState};
use crate::grid::{AxisBoundary, Grid2D, WallSpeed};
use crate::kinetic::{KineticState, VelocityGrid};
use crate::params::ModelParams;

/// Smooth single-mode setup on an arbitrary periodic box:
/// `rho = rho0 + amplitude cos(2 pi mx x / Lx) sin(2 pi my y / Ly)`, constant velocity.
#[derive(Clone, Debug, PartialEq)]
pub struct CustomSetup {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub rho0: f64,
    pub amplitude: f64,
    pub modes: (f64, f64),
    pub velocity: (f64, f64),
}

impl Default for CustomSetup {
    fn default() -> Self {
        Self {
            x_range: (0.0, 1.0),
            y_range: (0.0, 1.0),
            rho0: 1.0,
            amplitude: 0.1,
            modes: (1.0, 1.0),
            velocity: (0.0, 0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    /// Density waves advected by a uniform flow on `[0,1] x [0,2]`, periodic.
    Oscillating,
    /// Perturbed shear flow between a resting bottom wall and an oscillating top wall.
    Couette,
    /// Taylor-Green-type vortex array on `[0, 2 pi]^2`, periodic.
    Vortex,
    Custom(CustomSetup),
}

/// Reference run parameters of a benchmark.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunDefaults {
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub steps: Option<usize>,
    pub t_final: Option<f64>,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Oscillating => "oscillating",
            Experiment::Couette => "couette",
            Experiment::Vortex => "vortex",
            Experiment::Custom(_) => "custom",
        }
    }

    pub fn defaults(&self) -> RunDefaults {
        match self {
            Experiment::Oscillating | Experiment::Couette => RunDefaults {
                nx: 64,
                ny: 128,
                dt: 6.25e-4,
                steps: Some(100),
                t_final: None,
            },
            Experiment::Vortex => RunDefaults {
                nx: 128,
                ny: 128,
                dt: 2e-4,
                steps: None,
                t_final: Some(0.6),
            },
            Experiment::Custom(_) => RunDefaults {
                nx: 64,
                ny: 64,
                dt: 1e-3,
                steps: Some(100),
                t_final: None,
            },
        }
    }

    /// Grid of the benchmark domain with `nx x ny` cells.
    pub fn grid(&self, nx: usize, ny: usize) -> Result<Grid2D> {
        match self {
            Experiment::Oscillating => Grid2D::periodic(nx, ny, (0.0, 1.0), (0.0, 2.0)),
            Experiment::Couette => Grid2D::new(
                nx,
                ny,
                (0.0, 1.0),
                (0.0, 2.0),
                AxisBoundary::periodic(),
                AxisBoundary::walls(
                    WallSpeed::Constant(0.0),
                    WallSpeed::Sinusoidal {
                        mean: 1.0,
                        amplitude: 0.25,
                        wavenumber: 8.0 * PI,
                    },
                ),
            ),
            Experiment::Vortex => Grid2D::periodic(nx, ny, (0.0, 2.0 * PI), (0.0, 2.0 * PI)),
            Experiment::Custom(c) => Grid2D::periodic(nx, ny, c.x_range, c.y_range),
        }
    }

    /// Density and velocity at a point.
    pub fn primitive_at(&self, x: f64, y: f64) -> (f64, f64, f64) {
        match self {
            Experiment::Oscillating => (1.0 + 0.2 * (10.0 * PI * x).cos() * (12.0 * PI * y).sin(), 1.0, 0.0),
            Experiment::Couette => (
                1.0 + 0.2 * (10.0 * PI * x).cos() * (12.0 * PI * y).sin(),
                y * (1.0 + 0.125 * (8.0 * PI * x).sin()),
                0.0,
            ),
            Experiment::Vortex => (
                1.0 + 0.1 * (8.0 * PI * x).cos() * (8.0 * PI * y).sin(),
                x.cos() * y.sin(),
                -y.cos() * x.sin(),
            ),
            Experiment::Custom(c) => {
                let lx = c.x_range.1 - c.x_range.0;
                let ly = c.y_range.1 - c.y_range.0;
                let rho = c.rho0
                    + c.amplitude
                        * (2.0 * PI * c.modes.0 * (x - c.x_range.0) / lx).cos()
                        * (2.0 * PI * c.modes.1 * (y - c.y_range.0) / ly).sin();
                (rho, c.velocity.0, c.velocity.1)
            }
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "oscillating" => Ok(Experiment::Oscillating),
            "couette" => Ok(Experiment::Couette),
            "vortex" | "taylor-green" => Ok(Experiment::Vortex),
            "custom" => Ok(Experiment::Custom(CustomSetup::default())),
            other => config(format!("unknown experiment `{other}` (expected oscillating, couette, vortex or custom)")),
        }
    }
}

/// Initial fluid state at cell centers and, when a velocity grid is given,
/// the matching local-equilibrium kinetic state.
pub fn build_initial(
    experiment: &Experiment,
    grid: &Grid2D,
    params: &ModelParams,
    vgrid: Option<&VelocityGrid>,
) -> Result<(FluidState, Option<KineticState>)> {
    let fluid = FluidState::from_primitive(grid, |x, y| experiment.primitive_at(x, y));
    fluid.check()?;
    let kinetic = match vgrid {
        Some(vg) => Some(KineticState::from_equilibrium(grid, vg, &fluid, params)?),
        None => None,
    };
    Ok((fluid, kinetic))
}

/// `sqrt(sum (a - b)^2 dx dy)` over interior cells.
pub fn l2_distance(a: &Field2D, b: &Field2D, grid: &Grid2D) -> Result<f64> {
    for f in [a, b] {
        if f.shape() != (grid.nx(), grid.ny()) {
            return Err(Error::ShapeMismatch {
                expected: (grid.nx(), grid.ny()),
                found: f.shape(),
            });
        }
    }
    let s: f64 = a.interior().zip(b.interior()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((s * grid.cell_area()).sqrt())
}

/// Velocity field `m / rho` of a state.
pub fn velocity_fields(state: &FluidState, grid: &Grid2D) -> (Field2D, Field2D) {
    let mut ux = Field2D::zeros(grid);
    let mut uy = Field2D::zeros(grid);
    for j in 0..grid.ny() as isize {
        for i in 0..grid.nx() as isize {
            let rho = state.rho.get(i, j);
            ux.set(i, j, state.mom_x.get(i, j) / rho);
            uy.set(i, j, state.mom_y.get(i, j) / rho);
        }
    }
    (ux, uy)
}

/// Values along the cell column nearest to a requested `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub column: usize,
    /// Center of the chosen column.
    pub x: f64,
    pub y: Vec<f64>,
    pub rho: Vec<f64>,
    pub ux: Vec<f64>,
    pub uy: Vec<f64>,
}

pub fn extract_slice(state: &FluidState, grid: &Grid2D, x: f64) -> Result<Slice> {
    let (xmin, xmax) = grid.x_range();
    if !(x >= xmin && x <= xmax) {
        return config(format!("slice coordinate {x} outside [{xmin}, {xmax}]"));
    }
    if state.rho.shape() != (grid.nx(), grid.ny()) {
        return Err(Error::ShapeMismatch {
            expected: (grid.nx(), grid.ny()),
            found: state.rho.shape(),
        });
    }
    let column = grid.nearest_column(x);
    let i = column as isize;
    let ny = grid.ny();
    let mut s = Slice {
        column,
        x: grid.x_center(i),
        y: Vec::with_capacity(ny),
        rho: Vec::with_capacity(ny),
        ux: Vec::with_capacity(ny),
        uy: Vec::with_capacity(ny),
    };
    for j in 0..ny as isize {
        let rho = state.rho.get(i, j);
        s.y.push(grid.y_center(j));
        s.rho.push(rho);
        s.ux.push(state.mom_x.get(i, j) / rho);
        s.uy.push(state.mom_y.get(i, j) / rho);
    }
    Ok(s)
}

/// `sqrt(sum (a - b)^2 dy)` between two equally sampled profiles.
pub fn slice_l2(a: &[f64], b: &[f64], dy: f64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            expected: (a.len(), 1),
            found: (b.len(), 1),
        });
    }
    let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((s * dy).sqrt())
}
