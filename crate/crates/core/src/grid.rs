//! Uniform Cartesian meshes with a ghost frame and per-face boundary tags.

use crate::error::{config, Result};

/// Ghost-layer width used by every grid. WENO3 interface states at the first
/// interior face reach two cells beyond the boundary.
pub const GHOST: usize = 2;

/// Tangential speed of a no-slip wall as a function of the coordinate along
/// the wall.
#[derive(Clone, Debug, PartialEq)]
pub enum WallSpeed {
    Constant(f64),
    /// `mean + amplitude * sin(wavenumber * s)`.
    Sinusoidal {
        mean: f64,
        amplitude: f64,
        wavenumber: f64,
    },
}

impl WallSpeed {
    pub fn at(&self, s: f64, _t: f64) -> f64 {
        match *self {
            WallSpeed::Constant(v) => v,
            WallSpeed::Sinusoidal {
                mean,
                amplitude,
                wavenumber,
            } => mean + amplitude * (wavenumber * s).sin(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    NoSlipWall,
}

/// Boundary condition on one face of the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCondition {
    pub kind: BoundaryKind,
    /// Required for [`BoundaryKind::NoSlipWall`], ignored otherwise.
    pub wall_velocity: Option<WallSpeed>,
}

impl BoundaryCondition {
    pub fn periodic() -> Self {
        Self {
            kind: BoundaryKind::Periodic,
            wall_velocity: None,
        }
    }

    pub fn wall(speed: WallSpeed) -> Self {
        Self {
            kind: BoundaryKind::NoSlipWall,
            wall_velocity: Some(speed),
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.kind == BoundaryKind::Periodic
    }
}

/// The low and high faces along one axis.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBoundary {
    pub low: BoundaryCondition,
    pub high: BoundaryCondition,
}

impl AxisBoundary {
    pub fn periodic() -> Self {
        Self {
            low: BoundaryCondition::periodic(),
            high: BoundaryCondition::periodic(),
        }
    }

    pub fn walls(low: WallSpeed, high: WallSpeed) -> Self {
        Self {
            low: BoundaryCondition::wall(low),
            high: BoundaryCondition::wall(high),
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.low.is_periodic()
    }

    fn validate(&self, axis: &str) -> Result<()> {
        if self.low.is_periodic() != self.high.is_periodic() {
            return config(format!(
                "{axis}: periodic boundary must be set on both faces"
            ));
        }
        for (face, bc) in [("low", &self.low), ("high", &self.high)] {
            if bc.kind == BoundaryKind::NoSlipWall && bc.wall_velocity.is_none() {
                return config(format!("{axis} {face} face: no-slip wall without wall velocity"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    nx: usize,
    ny: usize,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    bc_x: AxisBoundary,
    bc_y: AxisBoundary,
}

impl Grid2D {
    pub fn new(
        nx: usize,
        ny: usize,
        (xmin, xmax): (f64, f64),
        (ymin, ymax): (f64, f64),
        bc_x: AxisBoundary,
        bc_y: AxisBoundary,
    ) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return config(format!("cell counts must be positive, got {nx}x{ny}"));
        }
        if !(xmax > xmin && xmin.is_finite() && xmax.is_finite()) {
            return config(format!("bad x extent [{xmin}, {xmax}]"));
        }
        if !(ymax > ymin && ymin.is_finite() && ymax.is_finite()) {
            return config(format!("bad y extent [{ymin}, {ymax}]"));
        }
        bc_x.validate("x")?;
        bc_y.validate("y")?;
        Ok(Self {
            nx,
            ny,
            xmin,
            xmax,
            ymin,
            ymax,
            bc_x,
            bc_y,
        })
    }

    /// Grid periodic in both directions.
    pub fn periodic(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        Self::new(nx, ny, x, y, AxisBoundary::periodic(), AxisBoundary::periodic())
    }

    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn ghost(&self) -> usize {
        GHOST
    }
    pub fn x_range(&self) -> (f64, f64) {
        (self.xmin, self.xmax)
    }
    pub fn y_range(&self) -> (f64, f64) {
        (self.ymin, self.ymax)
    }
    pub fn bc_x(&self) -> &AxisBoundary {
        &self.bc_x
    }
    pub fn bc_y(&self) -> &AxisBoundary {
        &self.bc_y
    }
    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / self.nx as f64
    }
    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / self.ny as f64
    }
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// x coordinate of the center of column `i` (may be a ghost column).
    pub fn x_center(&self, i: isize) -> f64 {
        self.xmin + (i as f64 + 0.5) * self.dx()
    }
    pub fn y_center(&self, j: isize) -> f64 {
        self.ymin + (j as f64 + 0.5) * self.dy()
    }

    /// Padded row length (interior plus both ghost frames).
    pub fn padded_nx(&self) -> usize {
        self.nx + 2 * GHOST
    }
    pub fn padded_ny(&self) -> usize {
        self.ny + 2 * GHOST
    }
    pub fn padded_len(&self) -> usize {
        self.padded_nx() * self.padded_ny()
    }

    /// Linear index of cell `(i, j)` in the padded row-major layout, where
    /// interior cells have `0 <= i < nx`, `0 <= j < ny` and ghosts reach `-GHOST`.
    #[inline]
    pub fn idx(&self, i: isize, j: isize) -> usize {
        debug_assert!(i >= -(GHOST as isize) && i < (self.nx + GHOST) as isize);
        debug_assert!(j >= -(GHOST as isize) && j < (self.ny + GHOST) as isize);
        (j + GHOST as isize) as usize * self.padded_nx() + (i + GHOST as isize) as usize
    }

    /// Interior column index nearest to the coordinate `x`.
    pub fn nearest_column(&self, x: f64) -> usize {
        let s = ((x - self.xmin) / self.dx() - 0.5).round();
        s.clamp(0.0, (self.nx - 1) as f64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_centers() {
        let g = Grid2D::periodic(64, 128, (0.0, 1.0), (0.0, 2.0)).unwrap();
        assert_eq!(g.dx(), 1.0 / 64.0);
        assert_eq!(g.dy(), 2.0 / 128.0);
        assert_eq!(g.x_center(0), 0.5 / 64.0);
        assert_eq!(g.y_center(127), 2.0 - 1.0 / 128.0);
        assert!(g.ghost() >= 2);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(Grid2D::periodic(0, 4, (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(Grid2D::periodic(4, 4, (1.0, 1.0), (0.0, 1.0)).is_err());
        assert!(Grid2D::periodic(4, 4, (0.0, 1.0), (0.0, -1.0)).is_err());
    }

    #[test]
    fn periodic_must_pair() {
        let half = AxisBoundary {
            low: BoundaryCondition::periodic(),
            high: BoundaryCondition::wall(WallSpeed::Constant(0.0)),
        };
        let err = Grid2D::new(4, 4, (0.0, 1.0), (0.0, 1.0), AxisBoundary::periodic(), half);
        assert!(matches!(err, Err(crate::Error::Config(_))));
    }

    #[test]
    fn wall_without_velocity_is_config_error() {
        let missing = AxisBoundary {
            low: BoundaryCondition::wall(WallSpeed::Constant(0.0)),
            high: BoundaryCondition {
                kind: BoundaryKind::NoSlipWall,
                wall_velocity: None,
            },
        };
        let err = Grid2D::new(4, 4, (0.0, 1.0), (0.0, 2.0), AxisBoundary::periodic(), missing);
        assert!(matches!(err, Err(crate::Error::Config(_))));
    }

    #[test]
    fn couette_wall_law() {
        let top = WallSpeed::Sinusoidal {
            mean: 1.0,
            amplitude: 0.25,
            wavenumber: 8.0 * std::f64::consts::PI,
        };
        // sin(2π) is not exactly zero in floating point
        assert!((top.at(0.25, 0.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nearest_column_picks_closest_center() {
        let g = Grid2D::periodic(64, 128, (0.0, 1.0), (0.0, 2.0)).unwrap();
        let i = g.nearest_column(0.5);
        assert!((g.x_center(i as isize) - 0.5).abs() <= 0.5 * g.dx() + 1e-15);
        assert_eq!(g.nearest_column(-3.0), 0);
        assert_eq!(g.nearest_column(9.0), 63);
    }
}
