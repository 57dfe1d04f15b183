//! Cell-centered fields and the conservative fluid state.

use crate::error::{Error, Result};
use crate::grid::{Grid2D, GHOST};
use crate::params::ModelParams;

/// Scalar field over the padded (interior + ghost) cell layout of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D {
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl Field2D {
    pub fn zeros(grid: &Grid2D) -> Self {
        Self {
            nx: grid.nx(),
            ny: grid.ny(),
            data: vec![0.0; grid.padded_len()],
        }
    }

    /// Field sampled at interior cell centers; ghosts are left at zero.
    pub fn from_fn(grid: &Grid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut field = Self::zeros(grid);
        for j in 0..grid.ny() as isize {
            let y = grid.y_center(j);
            for i in 0..grid.nx() as isize {
                field.set(i, j, f(grid.x_center(i), y));
            }
        }
        field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    #[inline]
    pub(crate) fn row_len(&self) -> usize {
        self.nx + 2 * GHOST
    }

    #[inline]
    fn idx(&self, i: isize, j: isize) -> usize {
        (j + GHOST as isize) as usize * self.row_len() + (i + GHOST as isize) as usize
    }

    #[inline]
    pub fn get(&self, i: isize, j: isize) -> f64 {
        self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, v: f64) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Interior values in row-major order (`j` outer, `i` inner).
    pub fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.ny as isize)
            .flat_map(move |j| (0..self.nx as isize).map(move |i| self.get(i, j)))
    }

    /// Sum of interior values in a fixed sequential order.
    pub fn interior_sum(&self) -> f64 {
        self.interior().sum()
    }

    pub fn interior_min(&self) -> f64 {
        self.interior().fold(f64::INFINITY, f64::min)
    }
}

/// Conservative variables `(rho, rho u_x, rho u_y)` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FluidState {
    pub rho: Field2D,
    pub mom_x: Field2D,
    pub mom_y: Field2D,
    pub time: f64,
}

impl FluidState {
    /// Builds a state from a primitive profile `(x, y) -> (rho, u_x, u_y)`.
    pub fn from_primitive(grid: &Grid2D, f: impl Fn(f64, f64) -> (f64, f64, f64)) -> Self {
        let mut s = Self {
            rho: Field2D::zeros(grid),
            mom_x: Field2D::zeros(grid),
            mom_y: Field2D::zeros(grid),
            time: 0.0,
        };
        for j in 0..grid.ny() as isize {
            let y = grid.y_center(j);
            for i in 0..grid.nx() as isize {
                let (rho, ux, uy) = f(grid.x_center(i), y);
                s.rho.set(i, j, rho);
                s.mom_x.set(i, j, rho * ux);
                s.mom_y.set(i, j, rho * uy);
            }
        }
        s
    }

    pub fn uniform(grid: &Grid2D, rho: f64, ux: f64, uy: f64) -> Self {
        Self::from_primitive(grid, |_, _| (rho, ux, uy))
    }

    /// Checks interior density positivity and finiteness of all interior values.
    pub fn check(&self) -> Result<()> {
        let (nx, ny) = self.rho.shape();
        for j in 0..ny as isize {
            for i in 0..nx as isize {
                let r = self.rho.get(i, j);
                if !(r > 0.0) || !r.is_finite() {
                    return Err(Error::NonPositiveDensity {
                        i: i as usize,
                        j: j as usize,
                        value: r,
                    });
                }
                for (name, f) in [("mom_x", &self.mom_x), ("mom_y", &self.mom_y)] {
                    if !f.get(i, j).is_finite() {
                        return Err(Error::NonFinite {
                            field: name,
                            i: i as usize,
                            j: j as usize,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Total mass `sum rho dx dy` over the interior.
pub fn total_mass(state: &FluidState, grid: &Grid2D) -> f64 {
    state.rho.interior_sum() * grid.cell_area()
}

/// Total momentum `sum rho u dx dy` over the interior.
pub fn total_momentum(state: &FluidState, grid: &Grid2D) -> [f64; 2] {
    let a = grid.cell_area();
    [state.mom_x.interior_sum() * a, state.mom_y.interior_sum() * a]
}

/// Primitive variables over the padded layout.
#[derive(Clone, Debug)]
pub struct Primitives {
    pub rho: Field2D,
    pub ux: Field2D,
    pub uy: Field2D,
    pub p: Field2D,
}

/// Recovers `u = mom / rho` and `p = rho R T`. Fails on the first interior
/// cell with non-positive density; ghost cells with `rho <= 0` (not yet
/// filled) get zero velocity.
pub fn primitive(state: &FluidState, params: &ModelParams) -> Result<Primitives> {
    state.check()?;
    let rho = state.rho.clone();
    let mut ux = rho.clone();
    let mut uy = rho.clone();
    let mut p = rho.clone();
    let src = (state.mom_x.as_slice(), state.mom_y.as_slice());
    for (k, &r) in rho.as_slice().iter().enumerate() {
        let (vx, vy) = if r > 0.0 {
            (src.0[k] / r, src.1[k] / r)
        } else {
            (0.0, 0.0)
        };
        ux.as_mut_slice()[k] = vx;
        uy.as_mut_slice()[k] = vy;
        p.as_mut_slice()[k] = params.pressure(r);
    }
    Ok(Primitives { rho, ux, uy, p })
}
