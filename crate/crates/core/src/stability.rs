//! Linear stability of the hybrid model around a uniform flow.
//!
//! A plane-wave perturbation `exp(i (k.x - omega t))` of a state moving with
//! speed `u0` leads to the quadratic
//!
//! ```text
//! X^2 - 4 i tau T k^2 X - T k^2 (1 - i tau k u0 cos(theta)) = 0,   omega = k u0 cos(theta) - X
//! ```
//!
//! The mode is stable when both roots have `Im omega < 0`. The Routh-Hurwitz
//! conditions reduce to `-D2 = 4 tau T k^2 > 0` and
//! `D4 = tau^2 T^2 k^6 (16 T - u0^2 cos^2 theta) > 0`, so instability needs
//! `u0^2 > 16 T` and a direction close enough to the flow.

use num_complex::Complex64;

use crate::error::{config, Result};
use crate::exec::{map_collect, Execution};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityQuery {
    /// Wavenumber magnitude.
    pub k: f64,
    /// Angle between the wave vector and the base flow.
    pub theta: f64,
    pub u0: f64,
    /// Temperature with the gas constant absorbed (`R T`).
    pub temperature: f64,
    pub tau: f64,
}

impl StabilityQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return config(format!("wavenumber must be positive, got {}", self.k));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return config(format!("temperature must be positive, got {}", self.temperature));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return config(format!("tau must be positive, got {}", self.tau));
        }
        if !(self.u0 >= 0.0 && self.u0.is_finite()) || !self.theta.is_finite() {
            return config("u0 must be non-negative and theta finite");
        }
        Ok(())
    }

    /// Half-width of the band around zero treated as neutral.
    pub fn margin(&self) -> f64 {
        1e-12 * (self.tau * self.temperature * self.k * self.k).max(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Stable,
    Marginal,
    Unstable,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Stable => "stable",
            Classification::Marginal => "marginal",
            Classification::Unstable => "unstable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub roots: [Complex64; 2],
    /// `D2 = -4 tau T k^2`.
    pub delta2: f64,
    pub delta4: f64,
    /// From the imaginary parts of the roots.
    pub classification: Classification,
    /// From the signs of the Routh-Hurwitz determinants.
    pub criterion: Classification,
}

impl StabilityVerdict {
    pub fn agrees(&self) -> bool {
        self.classification == self.criterion
    }

    pub fn max_growth(&self) -> f64 {
        self.roots[0].im.max(self.roots[1].im)
    }
}

/// Both frequencies `omega` of a query.
pub fn characteristic_roots(q: &StabilityQuery) -> [Complex64; 2] {
    let tk2 = q.temperature * q.k * q.k;
    let shift = q.k * q.u0 * q.theta.cos();
    let b = Complex64::new(0.0, -4.0 * q.tau * tk2);
    let c = Complex64::new(-tk2, tk2 * q.tau * shift);
    let d = (b * b - 4.0 * c).sqrt();
    // pick the sign that adds magnitudes, then recover the other root from c
    let q1 = if (b.conj() * d).re >= 0.0 { -(b + d) / 2.0 } else { -(b - d) / 2.0 };
    let x1 = q1;
    let x2 = c / q1;
    [shift - x1, shift - x2]
}

/// `(-D2, D4)`.
pub fn routh_hurwitz(q: &StabilityQuery) -> (f64, f64) {
    let (t, k) = (q.temperature, q.k);
    let c = q.theta.cos();
    let minus_d2 = 4.0 * q.tau * t * k * k;
    let d4 = q.tau * q.tau * t * t * k.powi(6) * (16.0 * t - q.u0 * q.u0 * c * c);
    (minus_d2, d4)
}

fn classify_roots(roots: &[Complex64; 2], margin: f64) -> Classification {
    let m = roots[0].im.max(roots[1].im);
    if m < -margin {
        Classification::Stable
    } else if m <= margin {
        Classification::Marginal
    } else {
        Classification::Unstable
    }
}

fn classify_criterion(q: &StabilityQuery, minus_d2: f64) -> Classification {
    let c = q.theta.cos();
    let (a, b) = (16.0 * q.temperature, q.u0 * q.u0 * c * c);
    let s = a - b;
    if minus_d2 <= 0.0 || s < -1e-12 * (a + b) {
        Classification::Unstable
    } else if s <= 1e-12 * (a + b) {
        Classification::Marginal
    } else {
        Classification::Stable
    }
}

pub fn analyze(q: &StabilityQuery) -> Result<StabilityVerdict> {
    q.validate()?;
    let roots = characteristic_roots(q);
    let (minus_d2, delta4) = routh_hurwitz(q);
    Ok(StabilityVerdict {
        roots,
        delta2: -minus_d2,
        delta4,
        classification: classify_roots(&roots, q.margin()),
        criterion: classify_criterion(q, minus_d2),
    })
}

/// Critical angle beyond which (towards the flow direction) modes grow.
///
/// `None` when `u0^2 < 16 T`: every direction is stable. At `u0^2 = 16 T`
/// the angle is zero and only exactly aligned waves are neutral.
pub fn threshold_angle(u0: f64, temperature: f64) -> Option<f64> {
    let a = 16.0 * temperature;
    let excess = u0 * u0 - a;
    if excess < 0.0 {
        None
    } else {
        Some(excess.sqrt().atan2(a.sqrt()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub query: StabilityQuery,
    pub verdict: StabilityVerdict,
}

/// Evaluates every combination of `ks x thetas x u0s` (k slowest).
pub fn stability_sweep(
    ks: &[f64],
    thetas: &[f64],
    u0s: &[f64],
    temperature: f64,
    tau: f64,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    let (nt, nu) = (thetas.len(), u0s.len());
    let n = ks.len() * nt * nu;
    map_collect(exec, n, |idx| {
        let query = StabilityQuery {
            k: ks[idx / (nt * nu)],
            theta: thetas[(idx / nu) % nt],
            u0: u0s[idx % nu],
            temperature,
            tau,
        };
        analyze(&query).map(|verdict| SweepRow { query, verdict })
    })
    .into_iter()
    .collect()
}

/// `n` evenly spaced points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..n)
            .map(|i| if i == n - 1 { max } else { min + (max - min) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn query(k: f64, theta: f64, u0: f64, t: f64, tau: f64) -> StabilityQuery {
        StabilityQuery { k, theta, u0, temperature: t, tau }
    }

    fn residual(q: &StabilityQuery, omega: Complex64) -> f64 {
        let tk2 = q.temperature * q.k * q.k;
        let x = q.k * q.u0 * q.theta.cos() - omega;
        let i = Complex64::i();
        let r = x * x - 4.0 * i * q.tau * tk2 * x - tk2 * (1.0 - i * q.tau * q.k * q.u0 * q.theta.cos());
        r.norm()
    }

    #[test]
    fn roots_solve_the_quadratic() {
        for q in [
            query(1.0, 0.0, 0.0, 1.0, 0.01),
            query(7.0, 0.3, 8.0, 1.5, 0.05),
            query(0.1, 2.0, 3.0, 0.5, 1e-4),
        ] {
            for w in characteristic_roots(&q) {
                assert!(residual(&q, w) < 1e-12 * (1.0 + q.temperature * q.k * q.k));
            }
        }
    }

    #[test]
    fn acoustic_limit() {
        let q = query(2.0, 0.0, 0.0, 1.0, 1e-9);
        let r = characteristic_roots(&q);
        let mut re = [r[0].re, r[1].re];
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 2.0).abs() < 1e-8 && (re[1] - 2.0).abs() < 1e-8);
        assert!(r.iter().all(|w| w.im < 0.0 && w.im > -1e-6));
    }

    #[test]
    fn small_example_is_damped() {
        let q = query(1.0, 0.0, 0.0, 1.0, 0.01);
        // X^2 - 0.04 i X - 1 = 0  =>  X = 0.02 i +- sqrt(1 - 0.0004)
        let s = (1.0f64 - 0.0004).sqrt();
        let r = characteristic_roots(&q);
        for w in r {
            assert!((w.im + 0.02).abs() < 1e-14);
            assert!((w.re.abs() - s).abs() < 1e-14);
        }
        assert_eq!(analyze(&q).unwrap().classification, Classification::Stable);
    }

    #[test]
    fn perpendicular_waves_ignore_flow_speed() {
        let a = characteristic_roots(&query(3.0, PI / 2.0, 0.0, 1.0, 0.1));
        let b = characteristic_roots(&query(3.0, PI / 2.0, 100.0, 1.0, 0.1));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_examples() {
        let (_, d4) = routh_hurwitz(&query(1.3, 0.4, 0.0, 1.0, 0.02));
        let expect = 16.0 * 0.02f64.powi(2) * 1.3f64.powi(6);
        assert!((d4 - expect).abs() < 1e-15);
        let (_, d4) = routh_hurwitz(&query(1.0, 0.0, 4.0, 1.0, 0.01));
        assert_eq!(d4, 0.0);
        let (md2, d4) = routh_hurwitz(&query(1.0, 0.0, 8.0, 1.0, 0.01));
        assert!((d4 + 4.8e-3).abs() < 1e-15);
        assert!((md2 - 0.04).abs() < 1e-16);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_angle(1.0, 1.0), None);
        assert_eq!(threshold_angle(8.0, 1.0), Some(PI / 3.0));
        assert_eq!(threshold_angle(4.0, 1.0), Some(0.0));
    }

    #[test]
    fn marginal_at_threshold() {
        let v = analyze(&query(1.0, 0.0, 4.0, 1.0, 0.01)).unwrap();
        assert_eq!(v.criterion, Classification::Marginal);
        assert_eq!(v.classification, Classification::Marginal);
    }

    #[test]
    fn sweep_band_matches_threshold() {
        let thetas = linspace(0.0, PI / 2.0, 91);
        let rows = stability_sweep(&[0.5, 2.0], &thetas, &[8.0], 1.0, 0.01, Execution::Sequential).unwrap();
        let tc = threshold_angle(8.0, 1.0).unwrap();
        for r in rows {
            let expect = if (r.query.theta - tc).abs() < 1e-9 {
                Classification::Marginal
            } else if r.query.theta < tc {
                Classification::Unstable
            } else {
                Classification::Stable
            };
            assert_eq!(r.verdict.criterion, expect, "theta {}", r.query.theta);
        }
    }

    #[test]
    fn still_flow_sweep_is_stable() {
        let rows = stability_sweep(&linspace(0.1, 10.0, 20), &linspace(0.0, PI, 13), &[0.0], 1.0, 0.05, Execution::Parallel)
            .unwrap();
        assert!(rows.iter().all(|r| r.verdict.classification == Classification::Stable && r.verdict.agrees()));
    }

    #[test]
    fn invalid_queries_are_rejected() {
        assert!(analyze(&query(0.0, 0.0, 1.0, 1.0, 0.1)).is_err());
        assert!(analyze(&query(1.0, 0.0, 1.0, -1.0, 0.1)).is_err());
        assert!(analyze(&query(1.0, 0.0, 1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, PI, 5);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[4], PI);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }
}
