//! Ghost-cell filling.
//!
//! Ghosts along x are filled first (interior rows only), then ghosts along y
//! over full padded rows, so the corner blocks are consistent with both
//! directions. Every ghost value is a function of interior values only, which
//! makes filling idempotent at a fixed time.

use crate::field::FluidState;
use crate::grid::{AxisBoundary, BoundaryKind, Grid2D, GHOST};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// How one ghost cell is obtained from its source cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum GhostRule {
    /// Plain copy (periodic wrap).
    Copy,
    /// Reflection across a no-slip wall whose normal is `normal`; the wall
    /// moves tangentially with `speed`.
    Wall { normal: Axis, speed: f64 },
}

/// Visits every ghost cell as `(ghost, source, rule)` in fill order.
pub(crate) fn for_each_ghost(
    grid: &Grid2D,
    t: f64,
    mut visit: impl FnMut((isize, isize), (isize, isize), GhostRule),
) {
    let (nx, ny) = (grid.nx() as isize, grid.ny() as isize);
    let g = GHOST as isize;

    for j in 0..ny {
        let y = grid.y_center(j);
        for k in 1..=g {
            let (lo_src, hi_src) = axis_sources(grid.bc_x(), nx, k);
            let lo = rule(grid.bc_x(), true, Axis::X, y, t);
            let hi = rule(grid.bc_x(), false, Axis::X, y, t);
            visit((-k, j), (lo_src, j), lo);
            visit((nx - 1 + k, j), (hi_src, j), hi);
        }
    }
    for i in -g..nx + g {
        let x = grid.x_center(i);
        for k in 1..=g {
            let (lo_src, hi_src) = axis_sources(grid.bc_y(), ny, k);
            let lo = rule(grid.bc_y(), true, Axis::Y, x, t);
            let hi = rule(grid.bc_y(), false, Axis::Y, x, t);
            visit((i, -k), (i, lo_src), lo);
            visit((i, ny - 1 + k), (i, hi_src), hi);
        }
    }
}

/// Source indices for the `k`-th ghost layer below and above an axis of `n` cells.
fn axis_sources(bc: &AxisBoundary, n: isize, k: isize) -> (isize, isize) {
    if bc.is_periodic() {
        (n - k, k - 1)
    } else {
        (k - 1, n - k)
    }
}

fn rule(bc: &AxisBoundary, low: bool, normal: Axis, s: f64, t: f64) -> GhostRule {
    let face = if low { &bc.low } else { &bc.high };
    match face.kind {
        BoundaryKind::Periodic => GhostRule::Copy,
        BoundaryKind::NoSlipWall => GhostRule::Wall {
            normal,
            // presence checked when the grid was built
            speed: face.wall_velocity.as_ref().map_or(0.0, |w| w.at(s, t)),
        },
    }
}

/// Fills the ghost frame of a fluid state at time `t`.
///
/// Periodic faces wrap around. No-slip walls mirror density and reflect the
/// velocity as `u_ghost = 2 u_wall - u_interior`, with the wall velocity
/// zero in the normal direction and equal to the wall speed tangentially.
pub fn apply_boundary(state: &mut FluidState, grid: &Grid2D, t: f64) {
    for_each_ghost(grid, t, |(gi, gj), (si, sj), r| {
        let rho = state.rho.get(si, sj);
        let mx = state.mom_x.get(si, sj);
        let my = state.mom_y.get(si, sj);
        let (gx, gy) = match r {
            GhostRule::Copy => (mx, my),
            GhostRule::Wall { normal: Axis::X, speed } => (-mx, 2.0 * rho * speed - my),
            GhostRule::Wall { normal: Axis::Y, speed } => (2.0 * rho * speed - mx, -my),
        };
        state.rho.set(gi, gj, rho);
        state.mom_x.set(gi, gj, gx);
        state.mom_y.set(gi, gj, gy);
    });
}
