use std::ops::{Add, Mul, Sub};

use crate::boundary::Axis;
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Conserved triple `(rho, rho u_x, rho u_y)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Conserved {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
}

impl Conserved {
    pub const fn new(rho: f64, mx: f64, my: f64) -> Self {
        Self { rho, mx, my }
    }
}

impl Add for Conserved {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.rho + o.rho, self.mx + o.mx, self.my + o.my)
    }
}

impl Sub for Conserved {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.rho - o.rho, self.mx - o.mx, self.my - o.my)
    }
}

impl Mul<Conserved> for f64 {
    type Output = Conserved;
    fn mul(self, q: Conserved) -> Conserved {
        Conserved::new(self * q.rho, self * q.mx, self * q.my)
    }
}

fn check_density(q: &Conserved) -> Result<()> {
    if q.rho > 0.0 && q.rho.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveDensity { i: 0, j: 0, value: q.rho })
    }
}

#[inline]
pub(crate) fn flux_unchecked(q: Conserved, dir: Axis, params: &ModelParams) -> Conserved {
    let p = params.pressure(q.rho);
    match dir {
        Axis::X => {
            let u = q.mx / q.rho;
            Conserved::new(q.mx, q.mx * u + p, q.my * u)
        }
        Axis::Y => {
            let v = q.my / q.rho;
            Conserved::new(q.my, q.mx * v, q.my * v + p)
        }
    }
}

#[inline]
pub(crate) fn wavespeed_unchecked(q: Conserved, dir: Axis, params: &ModelParams) -> f64 {
    let un = match dir {
        Axis::X => q.mx / q.rho,
        Axis::Y => q.my / q.rho,
    };
    un.abs() + params.sound_speed()
}

#[inline]
pub(crate) fn rusanov_unchecked(l: Conserved, r: Conserved, dir: Axis, params: &ModelParams) -> Conserved {
    let lambda = wavespeed_unchecked(l, dir, params).max(wavespeed_unchecked(r, dir, params));
    let fl = flux_unchecked(l, dir, params);
    let fr = flux_unchecked(r, dir, params);
    0.5 * (fl + fr) - (0.5 * lambda) * (r - l)
}

/// Exact flux `F(q)` (x) or `G(q)` (y) with `p = rho R T`.
pub fn physical_flux(q: Conserved, dir: Axis, params: &ModelParams) -> Result<Conserved> {
    check_density(&q)?;
    Ok(flux_unchecked(q, dir, params))
}

/// `|u_n| + sqrt(R T)`.
pub fn max_wavespeed(q: Conserved, dir: Axis, params: &ModelParams) -> Result<f64> {
    check_density(&q)?;
    Ok(wavespeed_unchecked(q, dir, params))
}

/// Local Lax-Friedrichs flux with the larger of the two one-sided wave speeds.
pub fn rusanov_flux(l: Conserved, r: Conserved, dir: Axis, params: &ModelParams) -> Result<Conserved> {
    check_density(&l)?;
    check_density(&r)?;
    Ok(rusanov_unchecked(l, r, dir, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn physical_flux_examples() {
        let p = unit();
        assert_eq!(
            physical_flux(Conserved::new(1.0, 0.0, 0.0), Axis::X, &p).unwrap(),
            Conserved::new(0.0, 1.0, 0.0)
        );
        assert_eq!(
            physical_flux(Conserved::new(1.0, 1.0, 0.0), Axis::X, &p).unwrap(),
            Conserved::new(1.0, 2.0, 0.0)
        );
        assert_eq!(
            physical_flux(Conserved::new(2.0, 2.0, 2.0), Axis::Y, &p).unwrap(),
            Conserved::new(2.0, 2.0, 4.0)
        );
        assert!(physical_flux(Conserved::new(0.0, 1.0, 0.0), Axis::X, &p).is_err());
    }

    #[test]
    fn wavespeed_examples() {
        let p = unit();
        assert_eq!(max_wavespeed(Conserved::new(1.0, 0.0, 0.0), Axis::X, &p).unwrap(), 1.0);
        assert_eq!(max_wavespeed(Conserved::new(1.0, 1.0, 0.0), Axis::X, &p).unwrap(), 2.0);
        assert_eq!(max_wavespeed(Conserved::new(1.0, 1.0, 0.0), Axis::Y, &p).unwrap(), 1.0);
    }

    #[test]
    fn interface_speed_is_max_of_sides() {
        // c = 0.5, so the one-sided speeds are 1.3 and 0.7
        let p = ModelParams { temperature: 0.25, ..unit() };
        let l = Conserved::new(1.0, 0.8, 0.0);
        let r = Conserved::new(1.0, 0.2, 0.0);
        let f = rusanov_flux(l, r, Axis::X, &p).unwrap();
        let fl = physical_flux(l, Axis::X, &p).unwrap();
        let fr = physical_flux(r, Axis::X, &p).unwrap();
        let expect = 0.5 * (fl + fr) - (0.5 * 1.3) * (r - l);
        assert_eq!(f, expect);
    }

    #[test]
    fn rusanov_consistency_and_example() {
        let p = unit();
        let q = Conserved::new(1.2, 0.3, -0.4);
        assert_eq!(
            rusanov_flux(q, q, Axis::Y, &p).unwrap(),
            physical_flux(q, Axis::Y, &p).unwrap()
        );
        let f = rusanov_flux(
            Conserved::new(1.0, 0.0, 0.0),
            Conserved::new(2.0, 0.0, 0.0),
            Axis::X,
            &p,
        )
        .unwrap();
        assert_eq!(f, Conserved::new(-0.5, 1.5, 0.0));
    }

    #[test]
    fn swapping_sides_flips_dissipation_only() {
        let p = unit();
        let (a, b) = (Conserved::new(1.0, 0.5, 0.1), Conserved::new(1.5, -0.2, 0.3));
        let fab = rusanov_flux(a, b, Axis::X, &p).unwrap();
        let fba = rusanov_flux(b, a, Axis::X, &p).unwrap();
        let central = 0.5 * (physical_flux(a, Axis::X, &p).unwrap() + physical_flux(b, Axis::X, &p).unwrap());
        let d1 = fab - central;
        let d2 = fba - central;
        assert!((d1.rho + d2.rho).abs() < 1e-15);
        assert!((d1.mx + d2.mx).abs() < 1e-15);
        assert!((d1.my + d2.my).abs() < 1e-15);
    }
}
