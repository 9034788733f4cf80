//! Sphere moments and the weighted kernel integrals `J_α` (ball) and
//! `I_{α,β}` (punctured disk).
//!
//! Each integral has two independent routes: an exact power series in
//! `|w|²` whose coefficients are Beta/Gamma ratios, and a Monte-Carlo
//! estimate of the defining integral. [`asymptotic_ratio_check`] tabulates
//! the series against the boundary envelope `(1 − r²)^α`.

mod monte_carlo;
mod series;

pub use monte_carlo::{i_alpha_beta_mc, j_alpha_mc, sphere_moment_mc};
pub use series::{i_alpha_beta_series, j_alpha_series, SeriesSum};

pub use crate::multi_index::MultiIndex;

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SeriesConfig;
use crate::error::{Error, Result};
use crate::special::{ln_gamma, ln_factorial};

/// `∫_{𝕊^k} |ξ^ν|² dσ(ξ) = (k − 1)! ν! / (|ν| + k − 1)!`.
pub fn sphere_moment(k: usize, nu: &MultiIndex) -> Result<f64> {
    if k == 0 || nu.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: nu.dim(),
        });
    }
    let order = nu.order() as f64;
    Ok((ln_factorial(k as u64 - 1) + nu.ln_factorial() - ln_gamma(order + k as f64)).exp())
}

/// Which kernel integral a ratio report tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "integral", rename_all = "snake_case")]
pub enum KernelIntegral {
    J { k: usize, alpha: f64 },
    I { alpha: f64, beta: f64 },
}

impl KernelIntegral {
    pub fn alpha(&self) -> f64 {
        match *self {
            KernelIntegral::J { alpha, .. } | KernelIntegral::I { alpha, .. } => alpha,
        }
    }

    pub fn series(&self, r: f64, cfg: &SeriesConfig) -> Result<SeriesSum> {
        match *self {
            KernelIntegral::J { k, alpha } => j_alpha_series(k, alpha, r, cfg),
            KernelIntegral::I { alpha, beta } => i_alpha_beta_series(alpha, beta, r, cfg),
        }
    }
}

/// Envelope the integral is divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Envelope {
    /// `(1 − r²)^α`
    Boundary,
    /// `(1 − r²)^α r^β`, the sharper upper envelope for `I_{α,β}` with `β ≤ 0`.
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub r: f64,
    pub value: f64,
    pub envelope: f64,
    pub ratio: f64,
}

/// Tabulated `integral / envelope` over a radius grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub integral: KernelIntegral,
    pub envelope: Envelope,
    pub points: Vec<RatioPoint>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub converged: bool,
}

impl RatioReport {
    pub fn spread(&self) -> f64 {
        self.max_ratio / self.min_ratio
    }

    /// Writes `r,value,envelope,ratio` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "r,value,envelope,ratio")?;
        for p in &self.points {
            writeln!(
                out,
                "{},{},{},{}",
                crate::output::fmt_num(p.r),
                crate::output::fmt_num(p.value),
                crate::output::fmt_num(p.envelope),
                crate::output::fmt_num(p.ratio)
            )?;
        }
        Ok(())
    }
}

/// `count` evenly spaced points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Evaluates the exact series on `grid` and divides by the chosen envelope.
///
/// Requires `−1 < α < 0`; the refined envelope additionally needs the `I`
/// integral with `β ≤ 0` and a grid avoiding `r = 0`.
pub fn asymptotic_ratio_check(
    integral: KernelIntegral,
    envelope: Envelope,
    grid: &[f64],
    cfg: &SeriesConfig,
) -> Result<RatioReport> {
    let alpha = integral.alpha();
    if !(alpha > -1.0 && alpha < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "boundary asymptotics need −1 < α < 0, got {alpha}"
        )));
    }
    let beta = match (integral, envelope) {
        (_, Envelope::Boundary) => 0.0,
        (KernelIntegral::I { beta, .. }, Envelope::Refined) if beta <= 0.0 => beta,
        _ => {
            return Err(Error::InvalidArgument(
                "the refined envelope applies to I_(α,β) with β ≤ 0".into(),
            ))
        }
    };
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty radius grid".into()));
    }
    if envelope == Envelope::Refined && beta < 0.0 && grid.iter().any(|&r| r == 0.0) {
        return Err(Error::InvalidArgument("refined envelope is infinite at r = 0".into()));
    }
    let evaluated: Vec<(RatioPoint, bool)> = grid
        .par_iter()
        .map(|&r| {
            let s = integral.series(r, cfg)?;
            let mut env = (1.0 - r * r).powf(alpha);
            if envelope == Envelope::Refined && beta != 0.0 {
                env *= r.powf(beta);
            }
            Ok((
                RatioPoint {
                    r,
                    value: s.value,
                    envelope: env,
                    ratio: s.value / env,
                },
                s.converged,
            ))
        })
        .collect::<Result<_>>()?;
    let converged = evaluated.iter().all(|(_, c)| *c);
    let points: Vec<RatioPoint> = evaluated.into_iter().map(|(p, _)| p).collect();
    let min_ratio = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = points.iter().map(|p| p.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(RatioReport {
        integral,
        envelope,
        points,
        min_ratio,
        max_ratio,
        converged,
    })
}
