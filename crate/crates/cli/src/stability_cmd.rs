use std::path::Path;

use anyhow::{bail, Context, Result};
use hybridflow_core::stability::{linspace, stability_sweep, threshold_angle, Classification};
use hybridflow_core::Execution;

use crate::output::{num, write_rows};

/// `min:max:n`; bounds may be multiples of pi (`0:pi:91`, `0:0.5pi:46`, `0:pi/2:46`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl std::str::FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            bail!("expected min:max:n, got `{s}`");
        };
        let r = Range {
            min: value(lo)?,
            max: value(hi)?,
            n: n.trim().parse().with_context(|| format!("bad count `{n}`"))?,
        };
        if r.n == 0 || r.max < r.min {
            bail!("range `{s}` is empty");
        }
        Ok(r)
    }
}

fn value(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((c, d)) = s.split_once("pi") {
        let c = c.trim().trim_end_matches('*');
        let coef = if c.is_empty() { 1.0 } else { c.parse::<f64>().with_context(|| format!("bad number `{s}`"))? };
        let div = match d.trim().strip_prefix('/') {
            Some(d) => d.parse::<f64>().with_context(|| format!("bad number `{s}`"))?,
            None if d.trim().is_empty() => 1.0,
            None => bail!("bad number `{s}`"),
        };
        return Ok(coef * std::f64::consts::PI / div);
    }
    s.parse::<f64>().with_context(|| format!("bad number `{s}`"))
}

pub struct SweepArgs {
    pub u0: Vec<f64>,
    pub temperature: f64,
    pub tau: f64,
    pub k: Range,
    pub theta: Range,
}

pub struct SweepSummary {
    pub rows: usize,
    pub stable: usize,
    pub marginal: usize,
    pub unstable: usize,
    pub disagreements: usize,
}

pub fn run(args: &SweepArgs, out: &Path, exec: Execution) -> Result<SweepSummary> {
    if !(args.temperature > 0.0) || !(args.tau > 0.0) {
        bail!("T and tau must be positive");
    }
    if args.k.min <= 0.0 {
        bail!("wavenumbers must be positive");
    }
    if args.u0.iter().any(|u| !(*u >= 0.0)) {
        bail!("u0 must be non-negative");
    }
    let ks = linspace(args.k.min, args.k.max, args.k.n);
    let thetas = linspace(args.theta.min, args.theta.max, args.theta.n);
    let rows = stability_sweep(&ks, &thetas, &args.u0, args.temperature, args.tau, exec)?;

    let header: Vec<String> = [
        "k", "theta", "u0", "T", "tau", "re_omega1", "im_omega1", "re_omega2", "im_omega2", "delta2", "delta4",
        "verdict", "criterion", "agree",
    ]
    .map(String::from)
    .to_vec();
    let mut table = Vec::with_capacity(rows.len());
    let mut summary = SweepSummary {
        rows: rows.len(),
        stable: 0,
        marginal: 0,
        unstable: 0,
        disagreements: 0,
    };
    for r in &rows {
        let (q, v) = (&r.query, &r.verdict);
        match v.classification {
            Classification::Stable => summary.stable += 1,
            Classification::Marginal => summary.marginal += 1,
            Classification::Unstable => summary.unstable += 1,
        }
        if !v.agrees() {
            summary.disagreements += 1;
        }
        table.push(vec![
            num(q.k),
            num(q.theta),
            num(q.u0),
            num(q.temperature),
            num(q.tau),
            num(v.roots[0].re),
            num(v.roots[0].im),
            num(v.roots[1].re),
            num(v.roots[1].im),
            num(v.delta2),
            num(v.delta4),
            v.classification.name().to_string(),
            v.criterion.name().to_string(),
            v.agrees().to_string(),
        ]);
    }
    if let Some(dir) = out.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    write_rows(out, &header, &table)?;
    Ok(summary)
}

pub fn describe_thresholds(u0: &[f64], temperature: f64) -> Vec<String> {
    u0.iter()
        .map(|&u| match threshold_angle(u, temperature) {
            None => format!("u0 = {u}: stable in every direction"),
            Some(t) => format!("u0 = {u}: unstable for |cos theta| > {:.6} (theta_c = {t:.6})", t.cos()),
        })
        .collect()
}
