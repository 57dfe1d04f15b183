use crate::exec::{map_collect, Execution};
use crate::field::{primitive, FluidState};
use crate::error::Result;
use crate::grid::Grid2D;
use crate::params::ModelParams;
use crate::reconstruct::{corner_gradient, mean_gradient, Gradient};

/// Stress components on one face.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FaceStress {
    pub xx: f64,
    pub xy: f64,
    pub yx: f64,
    pub yy: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StressModel {
    /// `4 rho grad u + div(rho u)` on the diagonal, `2 rho (sym grad u)` off it.
    Hybrid,
    /// `2 rho sym(grad u)`.
    NavierStokes,
}

impl StressModel {
    /// Stress from face density, velocity gradient `du` and momentum gradient `dm`.
    #[inline]
    pub fn evaluate(self, rho: f64, du: &Gradient, dm: &Gradient) -> FaceStress {
        match self {
            StressModel::Hybrid => {
                let div_m = dm[0][0] + dm[1][1];
                let shear = 2.0 * rho * (du[0][1] + du[1][0]);
                FaceStress {
                    xx: 4.0 * rho * du[0][0] + div_m,
                    xy: shear,
                    yx: shear,
                    yy: 4.0 * rho * du[1][1] + div_m,
                }
            }
            StressModel::NavierStokes => {
                let shear = rho * (du[0][1] + du[1][0]);
                FaceStress {
                    xx: 2.0 * rho * du[0][0],
                    xy: shear,
                    yx: shear,
                    yy: 2.0 * rho * du[1][1],
                }
            }
        }
    }
}

/// Face-centered stresses. X-faces are indexed `(f, j)` with `f` in `0..=nx`
/// denoting the face between cells `f - 1` and `f`; y-faces `(i, f)` likewise.
#[derive(Clone, Debug, PartialEq)]
pub struct StressFields {
    nx: usize,
    ny: usize,
    x_faces: Vec<FaceStress>,
    y_faces: Vec<FaceStress>,
}

impl StressFields {
    #[inline]
    pub fn x_face(&self, f: usize, j: usize) -> FaceStress {
        self.x_faces[j * (self.nx + 1) + f]
    }

    #[inline]
    pub fn y_face(&self, i: usize, f: usize) -> FaceStress {
        self.y_faces[f * self.nx + i]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }
}

/// Stress fields of `model` for a state whose ghost frame is filled.
pub(crate) fn compute_stress(
    model: StressModel,
    state: &FluidState,
    grid: &Grid2D,
    params: &ModelParams,
    exec: Execution,
) -> Result<StressFields> {
    let prim = primitive(state, params)?;
    let (nx, ny) = (grid.nx(), grid.ny());
    let (dx, dy) = (grid.dx(), grid.dy());

    // corners (ci + 1/2, cj + 1/2) for ci in -1..nx, cj in -1..ny
    let cw = nx + 1;
    let corners: Vec<(Gradient, Gradient)> = map_collect(exec, cw * (ny + 1), |k| {
        let ci = (k % cw) as isize - 1;
        let cj = (k / cw) as isize - 1;
        (
            corner_gradient(&prim.ux, &prim.uy, ci, cj, dx, dy),
            corner_gradient(&state.mom_x, &state.mom_y, ci, cj, dx, dy),
        )
    });
    let corner = |ci: isize, cj: isize| &corners[(cj + 1) as usize * cw + (ci + 1) as usize];

    let x_faces = map_collect(exec, (nx + 1) * ny, |k| {
        let f = (k % (nx + 1)) as isize;
        let j = (k / (nx + 1)) as isize;
        let (lo, hi) = (corner(f - 1, j - 1), corner(f - 1, j));
        let rho = 0.5 * (state.rho.get(f - 1, j) + state.rho.get(f, j));
        model.evaluate(rho, &mean_gradient(&lo.0, &hi.0), &mean_gradient(&lo.1, &hi.1))
    });
    let y_faces = map_collect(exec, nx * (ny + 1), |k| {
        let i = (k % nx) as isize;
        let f = (k / nx) as isize;
        let (lo, hi) = (corner(i - 1, f - 1), corner(i, f - 1));
        let rho = 0.5 * (state.rho.get(i, f - 1) + state.rho.get(i, f));
        model.evaluate(rho, &mean_gradient(&lo.0, &hi.0), &mean_gradient(&lo.1, &hi.1))
    });
    Ok(StressFields {
        nx,
        ny,
        x_faces,
        y_faces,
    })
}

/// Hybrid-model stresses; the ghost frame of `state` must be filled.
pub fn hmm_stress(state: &FluidState, grid: &Grid2D, params: &ModelParams) -> Result<StressFields> {
    compute_stress(StressModel::Hybrid, state, grid, params, Execution::default())
}

/// Navier-Stokes stresses; the ghost frame of `state` must be filled.
pub fn ns_stress(state: &FluidState, grid: &Grid2D, params: &ModelParams) -> Result<StressFields> {
    compute_stress(StressModel::NavierStokes, state, grid, params, Execution::default())
}
