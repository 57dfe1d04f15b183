use log::warn;

use super::flux::{rusanov_unchecked, wavespeed_unchecked, Conserved};
use super::stress::{compute_stress, StressFields, StressModel};
use crate::boundary::{apply_boundary, Axis};
use crate::error::{Error, Result};
use crate::exec::{for_each_chunk3, map_collect, Execution};
use crate::field::{Field2D, FluidState};
use crate::grid::{Grid2D, GHOST};
use crate::params::{ModelParams, TimeStep};
use crate::reconstruct::Reconstruction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FluidModel {
    Euler,
    NavierStokes,
    Hybrid,
}

impl FluidModel {
    pub fn name(self) -> &'static str {
        match self {
            FluidModel::Euler => "euler",
            FluidModel::NavierStokes => "ns",
            FluidModel::Hybrid => "hmm",
        }
    }
}

/// Explicit finite-volume solver for one fluid model on a fixed grid.
#[derive(Clone, Debug)]
pub struct FluidSolver {
    grid: Grid2D,
    params: ModelParams,
    model: FluidModel,
    reconstruction: Reconstruction,
    exec: Execution,
}

impl FluidSolver {
    pub fn new(grid: Grid2D, params: ModelParams, model: FluidModel) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            grid,
            params,
            model,
            reconstruction: Reconstruction::default(),
            exec: Execution::default(),
        })
    }

    pub fn with_reconstruction(mut self, r: Reconstruction) -> Self {
        self.reconstruction = r;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn model(&self) -> FluidModel {
        self.model
    }

    /// Factor multiplying the stress divergence: `tau_hmm R T` or `eps R T`.
    pub fn source_scale(&self) -> f64 {
        match self.model {
            FluidModel::Euler => 0.0,
            FluidModel::NavierStokes => self.params.eps_ns * self.params.rt(),
            FluidModel::Hybrid => self.params.tau_hmm * self.params.rt(),
        }
    }

    fn stress_model(&self) -> Option<StressModel> {
        match self.model {
            FluidModel::Euler => None,
            FluidModel::NavierStokes => Some(StressModel::NavierStokes),
            FluidModel::Hybrid => Some(StressModel::Hybrid),
        }
    }

    /// Courant number `dt * max(lambda_x / dx + lambda_y / dy)` of a state.
    pub fn cfl_number(&self, state: &FluidState, dt: f64) -> f64 {
        let (dx, dy) = (self.grid.dx(), self.grid.dy());
        let mut worst: f64 = 0.0;
        for j in 0..self.grid.ny() as isize {
            for i in 0..self.grid.nx() as isize {
                let q = cell(state, i, j);
                let s = wavespeed_unchecked(q, Axis::X, &self.params) / dx
                    + wavespeed_unchecked(q, Axis::Y, &self.params) / dy;
                worst = worst.max(s);
            }
        }
        dt * worst
    }

    /// Step size for the next update under the configured [`TimeStep`] mode.
    pub fn time_step(&self, state: &FluidState) -> f64 {
        match self.params.time_step {
            TimeStep::Fixed(dt) => dt,
            TimeStep::Cfl(c) => c / self.cfl_number(state, 1.0),
        }
    }

    /// Advances `state` by one explicit Euler step of size `dt`.
    pub fn step(&self, state: &mut FluidState, dt: f64) -> Result<()> {
        state.check()?;
        let cfl = self.cfl_number(state, dt);
        if cfl > 1.0 {
            warn!("{}: CFL number {cfl:.3} exceeds 1 at t = {}", self.model.name(), state.time);
        }
        apply_boundary(state, &self.grid, state.time);

        let (fx, gy) = self.fluxes(state)?;
        let scale = self.source_scale();
        let stress = match self.stress_model() {
            Some(m) if scale != 0.0 => Some(compute_stress(m, state, &self.grid, &self.params, self.exec)?),
            _ => None,
        };

        let mut rho = state.rho.clone();
        let mut mx = state.mom_x.clone();
        let mut my = state.mom_y.clone();
        self.update(&fx, &gy, stress.as_ref(), scale, dt, &mut rho, &mut mx, &mut my);
        state.rho = rho;
        state.mom_x = mx;
        state.mom_y = my;
        state.time += dt;
        state.check()
    }

    /// Runs `n` steps with the configured time-step mode.
    pub fn advance(&self, state: &mut FluidState, n: usize) -> Result<()> {
        for _ in 0..n {
            let dt = self.time_step(state);
            self.step(state, dt)?;
        }
        Ok(())
    }

    /// Numerical fluxes on all x-faces (`ny` rows of `nx + 1`) and y-faces
    /// (`ny + 1` rows of `nx`).
    fn fluxes(&self, state: &FluidState) -> Result<(Vec<Conserved>, Vec<Conserved>)> {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let recon = self.reconstruction;
        let params = &self.params;

        let x_rows = map_collect(self.exec, ny, |j| -> Result<Vec<Conserved>> {
            let j = j as isize;
            (0..=nx as isize)
                .map(|f| {
                    let w = [f - 2, f - 1, f, f + 1].map(|i| cell(state, i, j));
                    let (l, r) = interface(recon, w);
                    positive(l, f - 1, j)?;
                    positive(r, f, j)?;
                    Ok(rusanov_unchecked(l, r, Axis::X, params))
                })
                .collect()
        });
        let y_rows = map_collect(self.exec, ny + 1, |f| -> Result<Vec<Conserved>> {
            let f = f as isize;
            (0..nx as isize)
                .map(|i| {
                    let w = [f - 2, f - 1, f, f + 1].map(|j| cell(state, i, j));
                    let (l, r) = interface(recon, w);
                    positive(l, i, f - 1)?;
                    positive(r, i, f)?;
                    Ok(rusanov_unchecked(l, r, Axis::Y, params))
                })
                .collect()
        });
        let flatten = |rows: Vec<Result<Vec<Conserved>>>| -> Result<Vec<Conserved>> {
            let mut out = Vec::new();
            for r in rows {
                out.extend(r?);
            }
            Ok(out)
        };
        Ok((flatten(x_rows)?, flatten(y_rows)?))
    }

    #[allow(clippy::too_many_arguments)]
    fn update(
        &self,
        fx: &[Conserved],
        gy: &[Conserved],
        stress: Option<&StressFields>,
        scale: f64,
        dt: f64,
        rho: &mut Field2D,
        mx: &mut Field2D,
        my: &mut Field2D,
    ) {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let rdx = dt / self.grid.dx();
        let rdy = dt / self.grid.dy();
        let row = rho.row_len();
        for_each_chunk3(
            self.exec,
            rho.as_mut_slice(),
            mx.as_mut_slice(),
            my.as_mut_slice(),
            row,
            |r, rr, rx, ry| {
                if r < GHOST || r >= ny + GHOST {
                    return;
                }
                let j = r - GHOST;
                for i in 0..nx {
                    let c = i + GHOST;
                    let (fw, fe) = (fx[j * (nx + 1) + i], fx[j * (nx + 1) + i + 1]);
                    let (gs, gn) = (gy[j * nx + i], gy[(j + 1) * nx + i]);
                    let div = rdx * (fe - fw) + rdy * (gn - gs);
                    rr[c] -= div.rho;
                    rx[c] -= div.mx;
                    ry[c] -= div.my;
                    if let Some(s) = stress {
                        let (w, e) = (s.x_face(i, j), s.x_face(i + 1, j));
                        let (so, no) = (s.y_face(i, j), s.y_face(i, j + 1));
                        rx[c] += scale * (rdx * (e.xx - w.xx) + rdy * (no.yx - so.yx));
                        ry[c] += scale * (rdx * (e.xy - w.xy) + rdy * (no.yy - so.yy));
                    }
                }
            },
        );
    }
}

#[inline]
fn cell(state: &FluidState, i: isize, j: isize) -> Conserved {
    Conserved::new(state.rho.get(i, j), state.mom_x.get(i, j), state.mom_y.get(i, j))
}

#[inline]
fn interface(recon: Reconstruction, w: [Conserved; 4]) -> (Conserved, Conserved) {
    let (rl, rr) = recon.interface(w.map(|q| q.rho));
    let (xl, xr) = recon.interface(w.map(|q| q.mx));
    let (yl, yr) = recon.interface(w.map(|q| q.my));
    (Conserved::new(rl, xl, yl), Conserved::new(rr, xr, yr))
}

/// Reconstructed states must keep positive density; report the owning cell.
#[inline]
fn positive(q: Conserved, i: isize, j: isize) -> Result<()> {
    if q.rho > 0.0 && q.rho.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveDensity {
            i: i.max(0) as usize,
            j: j.max(0) as usize,
            value: q.rho,
        })
    }
}
