use std::f64::consts::PI;

use crate::error::{config, Result};
use crate::params::ModelParams;

/// Uniform Cartesian lattice of discrete velocities. Nodes sit at the
/// centers of `nvx x nvy` cells covering the truncated velocity box, and
/// every node carries the quadrature weight `dvx * dvy`.
#[derive(Clone, Debug, PartialEq)]
pub struct VelocityGrid {
    nvx: usize,
    nvy: usize,
    vx_range: (f64, f64),
    vy_range: (f64, f64),
    vx: Vec<f64>,
    vy: Vec<f64>,
}

impl Default for VelocityGrid {
    /// 20 x 20 nodes on `[-5, 5]^2`.
    fn default() -> Self {
        Self::new(20, 20, (-5.0, 5.0), (-5.0, 5.0)).expect("valid default lattice")
    }
}

impl VelocityGrid {
    pub fn new(nvx: usize, nvy: usize, vx_range: (f64, f64), vy_range: (f64, f64)) -> Result<Self> {
        if nvx == 0 || nvy == 0 {
            return config(format!("velocity lattice needs nodes, got {nvx}x{nvy}"));
        }
        for (lo, hi) in [vx_range, vy_range] {
            if !(hi > lo && lo.is_finite() && hi.is_finite()) {
                return config(format!("bad velocity bounds [{lo}, {hi}]"));
            }
        }
        let nodes = |n: usize, (lo, hi): (f64, f64)| {
            let h = (hi - lo) / n as f64;
            (0..n).map(|k| lo + (k as f64 + 0.5) * h).collect::<Vec<_>>()
        };
        Ok(Self {
            nvx,
            nvy,
            vx_range,
            vy_range,
            vx: nodes(nvx, vx_range),
            vy: nodes(nvy, vy_range),
        })
    }

    /// Square lattice with `n` nodes per axis on `[-vmax, vmax]^2`.
    pub fn symmetric(n: usize, vmax: f64) -> Result<Self> {
        Self::new(n, n, (-vmax, vmax), (-vmax, vmax))
    }

    pub fn len(&self) -> usize {
        self.nvx * self.nvy
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nvx, self.nvy)
    }

    pub fn vx_range(&self) -> (f64, f64) {
        self.vx_range
    }

    pub fn vy_range(&self) -> (f64, f64) {
        self.vy_range
    }

    pub fn dvx(&self) -> f64 {
        (self.vx_range.1 - self.vx_range.0) / self.nvx as f64
    }

    pub fn dvy(&self) -> f64 {
        (self.vy_range.1 - self.vy_range.0) / self.nvy as f64
    }

    /// Quadrature weight of every node.
    pub fn weight(&self) -> f64 {
        self.dvx() * self.dvy()
    }

    /// Node `k = ky * nvx + kx` as `(v_x, v_y)`.
    #[inline]
    pub fn node(&self, k: usize) -> (f64, f64) {
        (self.vx[k % self.nvx], self.vy[k / self.nvx])
    }

    pub fn vx_nodes(&self) -> &[f64] {
        &self.vx
    }

    pub fn vy_nodes(&self) -> &[f64] {
        &self.vy
    }

    /// Largest node speed along each axis.
    pub fn max_speed(&self) -> (f64, f64) {
        let m = |v: &[f64]| v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        (m(&self.vx), m(&self.vy))
    }
}

/// Maxwellian `rho / (2 pi R T) exp(-|v - u|^2 / (2 R T))` at one velocity.
pub fn maxwellian_at(rho: f64, u: (f64, f64), v: (f64, f64), params: &ModelParams) -> f64 {
    let rt = params.rt();
    let (cx, cy) = (v.0 - u.0, v.1 - u.1);
    rho / (2.0 * PI * rt) * (-(cx * cx + cy * cy) / (2.0 * rt)).exp()
}

/// Maxwellian evaluated on every node, written into `out` (length `vgrid.len()`).
/// Uses the separable form `exp(-cx^2/2RT) * exp(-cy^2/2RT)`.
pub fn maxwellian_into(out: &mut [f64], rho: f64, u: (f64, f64), vgrid: &VelocityGrid, params: &ModelParams) {
    debug_assert_eq!(out.len(), vgrid.len());
    let rt = params.rt();
    let pref = rho / (2.0 * PI * rt);
    let nvx = vgrid.nvx;
    let mut stack = [0.0f64; 64];
    let mut heap = Vec::new();
    let gx: &mut [f64] = if nvx <= stack.len() {
        &mut stack[..nvx]
    } else {
        heap.resize(nvx, 0.0);
        &mut heap
    };
    for (g, &vx) in gx.iter_mut().zip(&vgrid.vx) {
        let c = vx - u.0;
        *g = (-c * c / (2.0 * rt)).exp();
    }
    for (row, &vy) in out.chunks_mut(nvx).zip(&vgrid.vy) {
        let c = vy - u.1;
        let gy = pref * (-c * c / (2.0 * rt)).exp();
        for (o, g) in row.iter_mut().zip(gx.iter()) {
            *o = gy * g;
        }
    }
}

pub fn maxwellian(rho: f64, u: (f64, f64), vgrid: &VelocityGrid, params: &ModelParams) -> Vec<f64> {
    let mut out = vec![0.0; vgrid.len()];
    maxwellian_into(&mut out, rho, u, vgrid, params);
    out
}

/// Discrete density and momentum of one cell's distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
}

impl Moments {
    pub fn velocity(&self) -> (f64, f64) {
        (self.mx / self.rho, self.my / self.rho)
    }
}

/// `sum_k (1, v_k) f_k dv`.
#[inline]
pub fn cell_moments(f: &[f64], vgrid: &VelocityGrid) -> Moments {
    let nvx = vgrid.nvx;
    let (mut rho, mut mx, mut my) = (0.0, 0.0, 0.0);
    for (row, &vy) in f.chunks(nvx).zip(&vgrid.vy) {
        let mut r = 0.0;
        let mut px = 0.0;
        for (&fk, &vx) in row.iter().zip(&vgrid.vx) {
            r += fk;
            px += vx * fk;
        }
        rho += r;
        mx += px;
        my += vy * r;
    }
    let w = vgrid.weight();
    Moments {
        rho: rho * w,
        mx: mx * w,
        my: my * w,
    }
}

/// Irving-Kirkwood stress `-sum_k (v_k - u) (v_k - u)^T f_k dv` of one cell.
pub fn ik_stress(f: &[f64], vgrid: &VelocityGrid, u: (f64, f64)) -> [[f64; 2]; 2] {
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (k, &fk) in f.iter().enumerate() {
        let (vx, vy) = vgrid.node(k);
        let (cx, cy) = (vx - u.0, vy - u.1);
        sxx += cx * cx * fk;
        sxy += cx * cy * fk;
        syy += cy * cy * fk;
    }
    let w = -vgrid.weight();
    [[sxx * w, sxy * w], [sxy * w, syy * w]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn default_lattice_matches_reference_setup() {
        let v = VelocityGrid::default();
        assert_eq!(v.shape(), (20, 20));
        assert_eq!(v.weight(), 0.25);
        assert_eq!(v.node(0), (-4.75, -4.75));
        assert_eq!(v.node(399), (4.75, 4.75));
        assert_eq!(v.max_speed(), (4.75, 4.75));
    }

    #[test]
    fn maxwellian_point_values() {
        let p = unit();
        let peak = maxwellian_at(1.0, (1.0, 0.0), (1.0, 0.0), &p);
        assert!((peak - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((peak - 0.15915).abs() < 1e-5);
        let off = maxwellian_at(1.0, (0.0, 0.0), (1.0, 0.0), &p);
        assert!((off - (-0.5f64).exp() / (2.0 * PI)).abs() < 1e-15);
        assert!((off - 0.09653).abs() < 1e-5);
        assert_eq!(maxwellian_at(0.0, (0.3, 0.1), (1.0, 2.0), &p), 0.0);
    }

    #[test]
    fn lattice_maxwellian_matches_pointwise_formula() {
        let p = ModelParams { temperature: 1.3, ..unit() };
        let v = VelocityGrid::new(12, 9, (-4.0, 5.0), (-3.0, 3.0)).unwrap();
        let m = maxwellian(1.7, (0.4, -0.2), &v, &p);
        for (k, mk) in m.iter().enumerate() {
            let e = maxwellian_at(1.7, (0.4, -0.2), v.node(k), &p);
            assert!((mk - e).abs() <= 1e-13 * e);
        }
    }

    #[test]
    fn zero_density_maxwellian_vanishes() {
        assert!(maxwellian(0.0, (1.0, 1.0), &VelocityGrid::default(), &unit())
            .iter()
            .all(|&x| x == 0.0));
    }

    #[test]
    fn moments_scale_linearly() {
        let v = VelocityGrid::default();
        let m = maxwellian(1.0, (0.5, -0.25), &v, &unit());
        let base = cell_moments(&m, &v);
        let scaled: Vec<f64> = m.iter().map(|x| 3.0 * x).collect();
        let s = cell_moments(&scaled, &v);
        assert!((s.rho - 3.0 * base.rho).abs() < 1e-13);
        let (u0, u1) = (base.velocity(), s.velocity());
        assert!((u0.0 - u1.0).abs() < 1e-14 && (u0.1 - u1.1).abs() < 1e-14);
    }

    #[test]
    fn ik_stress_is_symmetric_and_zero_for_vacuum() {
        let v = VelocityGrid::default();
        assert_eq!(ik_stress(&vec![0.0; 400], &v, (0.0, 0.0)), [[0.0; 2]; 2]);
        let f: Vec<f64> = (0..400).map(|k| ((k * 37 % 101) as f64) * 1e-3).collect();
        let t = ik_stress(&f, &v, (0.2, -0.1));
        assert_eq!(t[0][1], t[1][0]);
    }

    #[test]
    fn maxwellian_stress_has_equal_diagonal() {
        let v = VelocityGrid::default();
        let m = maxwellian(1.0, (0.0, 0.0), &v, &unit());
        let t = ik_stress(&m, &v, (0.0, 0.0));
        assert!((t[0][0] - t[1][1]).abs() < 1e-12);
        assert!(t[0][1].abs() < 1e-12);
    }
}
