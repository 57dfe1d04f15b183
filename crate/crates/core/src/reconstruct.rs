//! Third-order WENO interface reconstruction and trapezoidal velocity
//! gradients at cell corners and faces.

use crate::field::Field2D;

/// Regularization of the nonlinear weights.
pub const WENO_EPS: f64 = 1e-6;

/// Which interface of the central cell is reconstructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Value at `i + 1/2` seen from cell `i` (left state of that interface).
    Left,
    /// Value at `i - 1/2` seen from cell `i` (right state of that interface).
    Right,
}

/// Spatial reconstruction used to build interface states.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reconstruction {
    /// Piecewise constant (cell values at both sides).
    FirstOrder,
    #[default]
    Weno3,
}

/// Jiang-Shu WENO3 from `[v_{i-1}, v_i, v_{i+1}]`.
#[inline]
pub fn weno3(stencil: [f64; 3], side: Side) -> f64 {
    let [a, b, c] = match side {
        Side::Left => stencil,
        Side::Right => [stencil[2], stencil[1], stencil[0]],
    };
    // candidate on {i-1, i} with weight 1/3, on {i, i+1} with weight 2/3
    let p0 = 1.5 * b - 0.5 * a;
    let p1 = 0.5 * (b + c);
    let beta0 = (b - a) * (b - a);
    let beta1 = (c - b) * (c - b);
    let a0 = (1.0 / 3.0) / ((WENO_EPS + beta0) * (WENO_EPS + beta0));
    let a1 = (2.0 / 3.0) / ((WENO_EPS + beta1) * (WENO_EPS + beta1));
    (a0 * p0 + a1 * p1) / (a0 + a1)
}

impl Reconstruction {
    /// Left and right states at the interface between cells 1 and 2 of the
    /// four-cell window `[v_{i-1}, v_i, v_{i+1}, v_{i+2}]`.
    #[inline]
    pub fn interface(self, w: [f64; 4]) -> (f64, f64) {
        match self {
            Reconstruction::FirstOrder => (w[1], w[2]),
            Reconstruction::Weno3 => (
                weno3([w[0], w[1], w[2]], Side::Left),
                weno3([w[1], w[2], w[3]], Side::Right),
            ),
        }
    }

    /// Upwind interface value for transport with speed of sign `positive`.
    #[inline]
    pub fn upwind(self, w: [f64; 4], positive: bool) -> f64 {
        match (self, positive) {
            (Reconstruction::FirstOrder, true) => w[1],
            (Reconstruction::FirstOrder, false) => w[2],
            (Reconstruction::Weno3, true) => weno3([w[0], w[1], w[2]], Side::Left),
            (Reconstruction::Weno3, false) => weno3([w[1], w[2], w[3]], Side::Right),
        }
    }
}

/// Velocity gradient `g[a][b] = d u_a / d x_b`.
pub type Gradient = [[f64; 2]; 2];

/// Gradient at the corner `(i + 1/2, j + 1/2)` from the four surrounding cells.
#[inline]
pub fn corner_gradient(ux: &Field2D, uy: &Field2D, i: isize, j: isize, dx: f64, dy: f64) -> Gradient {
    let comp = |f: &Field2D| {
        let (c00, c10) = (f.get(i, j), f.get(i + 1, j));
        let (c01, c11) = (f.get(i, j + 1), f.get(i + 1, j + 1));
        [
            0.5 * ((c10 - c00) / dx + (c11 - c01) / dx),
            0.5 * ((c01 - c00) / dy + (c11 - c10) / dy),
        ]
    };
    [comp(ux), comp(uy)]
}

#[inline]
pub(crate) fn mean_gradient(a: &Gradient, b: &Gradient) -> Gradient {
    [
        [0.5 * (a[0][0] + b[0][0]), 0.5 * (a[0][1] + b[0][1])],
        [0.5 * (a[1][0] + b[1][0]), 0.5 * (a[1][1] + b[1][1])],
    ]
}

/// Gradient on the x-face `(i + 1/2, j)`: mean of its two corners.
pub fn face_gradient_x(ux: &Field2D, uy: &Field2D, i: isize, j: isize, dx: f64, dy: f64) -> Gradient {
    mean_gradient(
        &corner_gradient(ux, uy, i, j - 1, dx, dy),
        &corner_gradient(ux, uy, i, j, dx, dy),
    )
}

/// Gradient on the y-face `(i, j + 1/2)`: mean of its two corners.
pub fn face_gradient_y(ux: &Field2D, uy: &Field2D, i: isize, j: isize, dx: f64, dy: f64) -> Gradient {
    mean_gradient(
        &corner_gradient(ux, uy, i - 1, j, dx, dy),
        &corner_gradient(ux, uy, i, j, dx, dy),
    )
}
