use log::warn;

use super::imex::ImexTableau;
use super::velocity::{cell_moments, maxwellian_into, Moments, VelocityGrid};
use crate::boundary::{for_each_ghost, Axis, GhostRule};
use crate::error::{config, Error, Result};
use crate::exec::{for_each_chunk, for_each_chunk2, map_collect, Execution};
use crate::field::{Field2D, FluidState};
use crate::grid::{Grid2D, GHOST};
use crate::params::{ModelParams, TimeStep};
use crate::reconstruct::Reconstruction;

/// Magnitude below which negative distribution values are treated as roundoff.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-10;

/// Discrete distribution `f_k(x_ij)` over the padded cell layout of a grid,
/// velocity index innermost.
#[derive(Clone, Debug, PartialEq)]
pub struct KineticState {
    nx: usize,
    ny: usize,
    nv: usize,
    f: Vec<f64>,
    pub time: f64,
}

impl KineticState {
    pub fn zeros(grid: &Grid2D, vgrid: &VelocityGrid) -> Self {
        Self {
            nx: grid.nx(),
            ny: grid.ny(),
            nv: vgrid.len(),
            f: vec![0.0; grid.padded_len() * vgrid.len()],
            time: 0.0,
        }
    }

    /// Fills every interior cell with `init(x, y, out)`; ghosts stay zero.
    pub fn from_fn(grid: &Grid2D, vgrid: &VelocityGrid, init: impl Fn(f64, f64, &mut [f64])) -> Self {
        let mut s = Self::zeros(grid, vgrid);
        for j in 0..grid.ny() as isize {
            for i in 0..grid.nx() as isize {
                let k = grid.idx(i, j);
                init(grid.x_center(i), grid.y_center(j), &mut s.f[k * s.nv..(k + 1) * s.nv]);
            }
        }
        s
    }

    /// Local equilibrium `f = M[rho, u]` of a fluid state, cell by cell.
    pub fn from_equilibrium(
        grid: &Grid2D,
        vgrid: &VelocityGrid,
        fluid: &FluidState,
        params: &ModelParams,
    ) -> Result<Self> {
        fluid.check()?;
        if fluid.rho.shape() != (grid.nx(), grid.ny()) {
            return Err(Error::ShapeMismatch {
                expected: (grid.nx(), grid.ny()),
                found: fluid.rho.shape(),
            });
        }
        let mut s = Self::zeros(grid, vgrid);
        for j in 0..grid.ny() as isize {
            for i in 0..grid.nx() as isize {
                let rho = fluid.rho.get(i, j);
                let u = (fluid.mom_x.get(i, j) / rho, fluid.mom_y.get(i, j) / rho);
                let k = grid.idx(i, j);
                maxwellian_into(&mut s.f[k * s.nv..(k + 1) * s.nv], rho, u, vgrid, params);
            }
        }
        s.time = fluid.time;
        Ok(s)
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.nx, self.ny, self.nv)
    }

    #[inline]
    fn offset(&self, i: isize, j: isize) -> usize {
        let g = GHOST as isize;
        ((j + g) as usize * (self.nx + 2 * GHOST) + (i + g) as usize) * self.nv
    }

    /// Distribution of cell `(i, j)` (ghosts reachable with negative indices).
    pub fn cell(&self, i: isize, j: isize) -> &[f64] {
        let o = self.offset(i, j);
        &self.f[o..o + self.nv]
    }

    pub fn cell_mut(&mut self, i: isize, j: isize) -> &mut [f64] {
        let o = self.offset(i, j);
        &mut self.f[o..o + self.nv]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.f
    }

    /// Smallest interior value.
    pub fn interior_min(&self) -> f64 {
        let mut m = f64::INFINITY;
        for j in 0..self.ny as isize {
            for i in 0..self.nx as isize {
                m = self.cell(i, j).iter().fold(m, |a, &b| a.min(b));
            }
        }
        m
    }

    /// Macroscopic density and momentum in every interior cell.
    pub fn moments(&self, grid: &Grid2D, vgrid: &VelocityGrid) -> Result<FluidState> {
        self.check_shape(grid, vgrid)?;
        let mut out = FluidState {
            rho: Field2D::zeros(grid),
            mom_x: Field2D::zeros(grid),
            mom_y: Field2D::zeros(grid),
            time: self.time,
        };
        for j in 0..self.ny as isize {
            for i in 0..self.nx as isize {
                let m = checked_moments(self.cell(i, j), vgrid, i, j)?;
                out.rho.set(i, j, m.rho);
                out.mom_x.set(i, j, m.mx);
                out.mom_y.set(i, j, m.my);
            }
        }
        Ok(out)
    }

    fn check_shape(&self, grid: &Grid2D, vgrid: &VelocityGrid) -> Result<()> {
        if (self.nx, self.ny) != (grid.nx(), grid.ny()) || self.nv != vgrid.len() {
            return Err(Error::ShapeMismatch {
                expected: (grid.nx(), grid.ny()),
                found: (self.nx, self.ny),
            });
        }
        Ok(())
    }
}

fn checked_moments(f: &[f64], vgrid: &VelocityGrid, i: isize, j: isize) -> Result<Moments> {
    let m = cell_moments(f, vgrid);
    if !(m.mx.is_finite() && m.my.is_finite()) || m.rho.is_nan() {
        return Err(Error::NonFinite { field: "f", i: i as usize, j: j as usize });
    }
    if !(m.rho > 0.0 && m.rho.is_finite()) {
        return Err(Error::NonPositiveDensity { i: i as usize, j: j as usize, value: m.rho });
    }
    Ok(m)
}

/// Fills the ghost frame of a kinetic state at time `t`.
///
/// Periodic faces copy the opposite interior distribution. A no-slip wall
/// ghost holds the Maxwellian with the source cell's density and the wall
/// velocity.
pub fn kinetic_apply_boundary(
    state: &mut KineticState,
    grid: &Grid2D,
    vgrid: &VelocityGrid,
    params: &ModelParams,
    t: f64,
) {
    let nv = state.nv;
    fill_ghosts(&mut state.f, nv, grid, vgrid, params, t);
}

fn fill_ghosts(f: &mut [f64], nv: usize, grid: &Grid2D, vgrid: &VelocityGrid, params: &ModelParams, t: f64) {
    for_each_ghost(grid, t, |(gi, gj), (si, sj), rule| {
        let g = grid.idx(gi, gj) * nv;
        let s = grid.idx(si, sj) * nv;
        match rule {
            GhostRule::Copy => f.copy_within(s..s + nv, g),
            GhostRule::Wall { normal, speed } => {
                let rho = cell_moments(&f[s..s + nv], vgrid).rho;
                let u = match normal {
                    Axis::X => (0.0, speed),
                    Axis::Y => (speed, 0.0),
                };
                maxwellian_into(&mut f[g..g + nv], rho, u, vgrid, params);
            }
        }
    });
}

/// IMEX Runge-Kutta solver for the discrete-velocity BGK equation.
#[derive(Clone, Debug)]
pub struct KineticSolver {
    grid: Grid2D,
    vgrid: VelocityGrid,
    params: ModelParams,
    tableau: ImexTableau,
    reconstruction: Reconstruction,
    exec: Execution,
}

impl KineticSolver {
    pub fn new(grid: Grid2D, vgrid: VelocityGrid, params: ModelParams) -> Result<Self> {
        Self::with_tableau(grid, vgrid, params, ImexTableau::ars222())
    }

    pub fn with_tableau(grid: Grid2D, vgrid: VelocityGrid, params: ModelParams, tableau: ImexTableau) -> Result<Self> {
        params.validate()?;
        if params.tau == 0.0
            && (0..tableau.stages()).any(|i| tableau.implicit(i, i) == 0.0 && tableau.needs_relaxation(i))
        {
            return config("tau = 0 needs an implicit diagonal on every stage whose relaxation term is used");
        }
        Ok(Self {
            grid,
            vgrid,
            params,
            tableau,
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

    pub fn velocity_grid(&self) -> &VelocityGrid {
        &self.vgrid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn tableau(&self) -> &ImexTableau {
        &self.tableau
    }

    /// Transport Courant number `dt (max|vx| / dx + max|vy| / dy)`.
    pub fn cfl_number(&self, dt: f64) -> f64 {
        let (vx, vy) = self.vgrid.max_speed();
        dt * (vx / self.grid.dx() + vy / self.grid.dy())
    }

    /// Largest step with transport Courant number `cfl`.
    pub fn max_time_step(&self, cfl: f64) -> f64 {
        cfl / self.cfl_number(1.0)
    }

    pub fn time_step(&self) -> f64 {
        match self.params.time_step {
            TimeStep::Fixed(dt) => dt,
            TimeStep::Cfl(c) => self.max_time_step(c),
        }
    }

    pub fn initial_state(&self, fluid: &FluidState) -> Result<KineticState> {
        KineticState::from_equilibrium(&self.grid, &self.vgrid, fluid, &self.params)
    }

    pub fn advance(&self, state: &mut KineticState, n: usize) -> Result<()> {
        let dt = self.time_step();
        for _ in 0..n {
            self.step(state, dt)?;
        }
        Ok(())
    }

    /// One IMEX step of size `dt`.
    ///
    /// Each stage assembles its explicit part from the stored transport and
    /// relaxation terms, takes the Maxwellian of that part's moments and
    /// solves the diagonal relaxation in closed form.
    pub fn step(&self, state: &mut KineticState, dt: f64) -> Result<()> {
        state.check_shape(&self.grid, &self.vgrid)?;
        let cfl = self.cfl_number(dt);
        if cfl > 1.0 {
            warn!("bgk: transport CFL number {cfl:.3} exceeds 1 at t = {}", state.time);
        }
        let tab = &self.tableau;
        let stages = tab.stages();
        let nv = state.nv;
        let row = self.grid.padded_nx() * nv;
        let len = state.f.len();
        let tau = self.params.tau;
        let (lo, hi) = (GHOST * nv, (GHOST + self.grid.nx()) * nv);
        let ny = self.grid.ny();
        let interior_row = |r: usize| r >= GHOST && r < ny + GHOST;

        let mut transport: Vec<Option<Vec<f64>>> = vec![None; stages];
        let mut relax: Vec<Option<Vec<f64>>> = vec![None; stages];
        let mut stage = vec![0.0; len];

        for i in 0..stages {
            let mut terms: Vec<(f64, &[f64])> = Vec::new();
            for j in 0..i {
                if let (Some(t), a) = (&transport[j], tab.explicit(i, j)) {
                    if a != 0.0 {
                        terms.push((dt * a, t));
                    }
                }
                if let (Some(r), a) = (&relax[j], tab.implicit(i, j)) {
                    if a != 0.0 {
                        terms.push((dt * a, r));
                    }
                }
            }
            let fnow = &state.f;
            for_each_chunk(self.exec, &mut stage, row, |r, out| {
                if !interior_row(r) {
                    return;
                }
                let base = r * row;
                out[lo..hi].copy_from_slice(&fnow[base + lo..base + hi]);
                for (c, term) in &terms {
                    for (o, t) in out[lo..hi].iter_mut().zip(&term[base + lo..base + hi]) {
                        *o += c * t;
                    }
                }
            });

            let aii = tab.implicit(i, i);
            if (aii != 0.0 || tab.needs_relaxation(i)) && tau.is_finite() {
                let r_i = self.relax_stage(&mut stage, dt * aii)?;
                if tab.needs_relaxation(i) {
                    relax[i] = Some(r_i);
                }
            }

            if tab.needs_transport(i) {
                let c_i: f64 = (0..stages).map(|j| tab.explicit(i, j)).sum();
                fill_ghosts(&mut stage, nv, &self.grid, &self.vgrid, &self.params, state.time + c_i * dt);
                transport[i] = Some(self.transport(&stage));
            }
        }

        let mut terms: Vec<(f64, &[f64])> = Vec::new();
        for j in 0..stages {
            if let Some(t) = &transport[j] {
                if tab.explicit_weight(j) != 0.0 {
                    terms.push((dt * tab.explicit_weight(j), t));
                }
            }
            if let Some(r) = &relax[j] {
                if tab.implicit_weight(j) != 0.0 {
                    terms.push((dt * tab.implicit_weight(j), r));
                }
            }
        }
        for_each_chunk(self.exec, &mut state.f, row, |r, out| {
            if !interior_row(r) {
                return;
            }
            let base = r * row;
            for (c, term) in &terms {
                for (o, t) in out[lo..hi].iter_mut().zip(&term[base + lo..base + hi]) {
                    *o += c * t;
                }
            }
        });
        state.time += dt;
        self.monitor(state)
    }

    /// Replaces the explicit stage part `E` by `F = E + h R` with
    /// `R = (M[E] - E) / (tau + h)` and returns `R`.
    fn relax_stage(&self, stage: &mut [f64], h: f64) -> Result<Vec<f64>> {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let nv = self.vgrid.len();
        let row = self.grid.padded_nx() * nv;
        let tau = self.params.tau;
        let moments = {
            let stage = &*stage;
            let rows = map_collect(self.exec, ny, |j| -> Result<Vec<Moments>> {
                (0..nx)
                    .map(|i| {
                        let o = self.grid.idx(i as isize, j as isize) * nv;
                        checked_moments(&stage[o..o + nv], &self.vgrid, i as isize, j as isize)
                    })
                    .collect()
            });
            rows.into_iter().collect::<Result<Vec<_>>>()?
        };
        let denom = tau + h;
        let mut r_all = vec![0.0; stage.len()];
        for_each_chunk2(self.exec, stage, &mut r_all, row, |r, e, rr| {
            if r < GHOST || r >= ny + GHOST {
                return;
            }
            let mj = &moments[r - GHOST];
            for (i, m) in mj.iter().enumerate() {
                let o = (i + GHOST) * nv;
                let (e, rr) = (&mut e[o..o + nv], &mut rr[o..o + nv]);
                maxwellian_into(rr, m.rho, m.velocity(), &self.vgrid, &self.params);
                if tau == 0.0 {
                    for (ek, rk) in e.iter_mut().zip(rr.iter_mut()) {
                        let mk = *rk;
                        *rk = (mk - *ek) / h;
                        *ek = mk;
                    }
                } else {
                    for (ek, rk) in e.iter_mut().zip(rr.iter_mut()) {
                        let d = (*rk - *ek) / denom;
                        *rk = d;
                        *ek += h * d;
                    }
                }
            }
        });
        Ok(r_all)
    }

    /// `-v . grad f` on interior cells from upwinded interface values; ghosts
    /// of `f` must be filled.
    fn transport(&self, f: &[f64]) -> Vec<f64> {
        let grid = &self.grid;
        let (nx, ny) = (grid.nx(), grid.ny());
        let nv = self.vgrid.len();
        let nvx = self.vgrid.shape().0;
        let vx: Vec<f64> = (0..nv).map(|k| self.vgrid.vx_nodes()[k % nvx]).collect();
        let vy: Vec<f64> = (0..nv).map(|k| self.vgrid.vy_nodes()[k / nvx]).collect();
        let recon = self.reconstruction;
        let at = |i: isize, j: isize| grid.idx(i, j) * nv;

        // y-interfaces: row `fj` lies between cells fj - 1 and fj
        let mut yf = vec![0.0; (ny + 1) * nx * nv];
        for_each_chunk(self.exec, &mut yf, nx * nv, |fj, out| {
            let fj = fj as isize;
            for i in 0..nx {
                let o = [fj - 2, fj - 1, fj, fj + 1].map(|j| at(i as isize, j));
                let out = &mut out[i * nv..(i + 1) * nv];
                for k in 0..nv {
                    out[k] = recon.upwind(o.map(|c| f[c + k]), vy[k] > 0.0);
                }
            }
        });

        let (rdx, rdy) = (1.0 / grid.dx(), 1.0 / grid.dy());
        let row = grid.padded_nx() * nv;
        let mut t = vec![0.0; f.len()];
        for_each_chunk(self.exec, &mut t, row, |r, out| {
            if r < GHOST || r >= ny + GHOST {
                return;
            }
            let j = (r - GHOST) as isize;
            let mut xf = vec![0.0; (nx + 1) * nv];
            for fi in 0..=nx {
                let fi_ = fi as isize;
                let o = [fi_ - 2, fi_ - 1, fi_, fi_ + 1].map(|i| at(i, j));
                for k in 0..nv {
                    xf[fi * nv + k] = recon.upwind(o.map(|c| f[c + k]), vx[k] > 0.0);
                }
            }
            let ys = &yf[j as usize * nx * nv..(j as usize + 1) * nx * nv];
            let yn = &yf[(j as usize + 1) * nx * nv..(j as usize + 2) * nx * nv];
            for i in 0..nx {
                let out = &mut out[(i + GHOST) * nv..(i + GHOST + 1) * nv];
                for k in 0..nv {
                    let c = i * nv + k;
                    out[k] = -(vx[k] * (xf[c + nv] - xf[c]) * rdx + vy[k] * (yn[c] - ys[c]) * rdy);
                }
            }
        });
        t
    }

    fn monitor(&self, state: &KineticState) -> Result<()> {
        let nv = state.nv;
        let rows = map_collect(self.exec, self.grid.ny(), |j| -> Result<f64> {
            let mut m = f64::INFINITY;
            for i in 0..self.grid.nx() {
                for &v in state.cell(i as isize, j as isize) {
                    if !v.is_finite() {
                        return Err(Error::NonFinite { field: "f", i, j });
                    }
                    m = m.min(v);
                }
            }
            Ok(m)
        });
        let mut worst = f64::INFINITY;
        for r in rows {
            worst = worst.min(r?);
        }
        if worst < -NEGATIVITY_TOLERANCE {
            warn!("bgk: distribution minimum {worst:.3e} at t = {} ({} velocity nodes)", state.time, nv);
        }
        Ok(())
    }
}
