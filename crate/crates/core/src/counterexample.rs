//! The endpoint blow-up sequence.
//!
//! With breakpoints `a_j = j^{−j}` and `g(r) = r^{1/j − (n+1)}` on
//! `(a_{j+1}, a_j]`, the functions
//! `f_m(z) = g(|z_n|) (conj(z_n)/|z_n|)^{n−1}` for `|z_n| > a_{m+1}` (zero
//! below) have bounded `L^p` norms at `p = 2n/(n+1)` while their projections
//! `2C_m / z_n^{n−1}` grow like the harmonic series. Everything here is
//! closed form; breakpoints live in the log domain.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::ln_factorial;

/// Largest cutoff accepted by [`blowup_demo`].
pub const MAX_M: usize = 120;

/// The piecewise power `g` restricted to `(a_{m+1}, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialStepFunction {
    n: usize,
    m: usize,
    /// `ln a_j` for `j = 1, …, m+1` at index `j − 1`.
    ln_breaks: Vec<f64>,
}

impl RadialStepFunction {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("need n ≥ 2, got {n}")));
        }
        let ln_breaks = (1..=m + 1).map(|j| ln_breakpoint(j)).collect();
        Ok(Self { n, m, ln_breaks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `ln a_j`, `1 ≤ j ≤ m + 1`.
    pub fn ln_breakpoint(&self, j: usize) -> f64 {
        self.ln_breaks[j - 1]
    }

    /// `1/j − (n + 1)`.
    pub fn exponent(&self, j: usize) -> f64 {
        1.0 / j as f64 - (self.n + 1) as f64
    }

    /// The `j` with `a_{j+1} < r ≤ a_j`, or `None` outside `(a_{m+1}, 1]`.
    pub fn piece_index(&self, r: f64) -> Option<usize> {
        if self.m == 0 || !(r > 0.0 && r <= 1.0) {
            return None;
        }
        let ln_r = r.ln();
        // ln_breaks is strictly decreasing; count breakpoints ≥ ln r
        let above = self.ln_breaks.partition_point(|&b| b >= ln_r);
        (above >= 1 && above <= self.m).then_some(above)
    }

    /// `g(r)`, zero outside the support.
    pub fn eval(&self, r: f64) -> f64 {
        match self.piece_index(r) {
            Some(j) => (self.exponent(j) * r.ln()).exp(),
            None => 0.0,
        }
    }

    /// `∫_{a_{j+1}}^{a_j} r^{e_j c + d − 1} dr` for piece `j`, with the
    /// antiderivative taken in the log domain.
    pub fn piece_power_integral(&self, j: usize, c: f64, d: f64) -> f64 {
        let ln_hi = self.ln_breaks[j - 1];
        let ln_lo = self.ln_breaks[j];
        power_integral(self.exponent(j) * c + d, ln_lo, ln_hi)
    }
}

/// `ln(j^{−j})`.
pub fn ln_breakpoint(j: usize) -> f64 {
    let jf = j as f64;
    -jf * jf.ln()
}

/// `∫_{e^{ln_lo}}^{e^{ln_hi}} r^{e − 1} dr`.
fn power_integral(e: f64, ln_lo: f64, ln_hi: f64) -> f64 {
    if e == 0.0 {
        ln_hi - ln_lo
    } else {
        // (b^e − a^e)/e = b^e (1 − e^{e(ln a − ln b)})/e
        (e * ln_hi).exp() * -(e * (ln_lo - ln_hi)).exp_m1() / e
    }
}

/// `f_m(z)`; only `z_n` matters.
pub fn fm_eval(n: usize, m: usize, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: z.len(),
        });
    }
    let zn = z[n - 1];
    let r = zn.norm();
    if r == 0.0 {
        return Err(Error::ZeroCoordinate { index: n - 1 });
    }
    if r >= 1.0 {
        return Err(Error::OutsideDomain(format!("|z_n| = {r} ≥ 1")));
    }
    let g = RadialStepFunction::new(n, m)?.eval(r);
    if g == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(g * (zn.conj() / r).powu(n as u32 - 1))
}

/// `∏_{j=k+1}^{n−1} ∫_𝔻 |w|^{2(j−1)} dV = k!/(n−1)!`.
fn moment_constant(n: usize, k: usize) -> f64 {
    (ln_factorial(k as u64) - ln_factorial(n as u64 - 1)).exp()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k < n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `‖f_m‖_p^p = k!/(n−1)! · 2 Σ_j ∫_{a_{j+1}}^{a_j} g(r)^p r^{2n−1} dr` on `ℍⁿ_k`.
pub fn fm_norm_pow(n: usize, k: usize, m: usize, p: f64) -> Result<f64> {
    check_nk(n, k)?;
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("need p ≥ 1, got {p}")));
    }
    let g = RadialStepFunction::new(n, m)?;
    let radial: f64 = (1..=m)
        .map(|j| g.piece_power_integral(j, p, 2.0 * n as f64))
        .sum();
    Ok(moment_constant(n, k) * 2.0 * radial)
}

/// `‖f_m‖_p`.
pub fn fm_norm(n: usize, k: usize, m: usize, p: f64) -> Result<f64> {
    Ok(fm_norm_pow(n, k, m, p)?.powf(1.0 / p))
}

/// The lower-bound constant and the radial integral behind the projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectionConstant {
    /// `C_m = Σ_{j≤m} j (1/j − (j+1)^{−(j+1)/j})`.
    pub c_m: f64,
    /// `2 ∫_{a_{m+1}}^1 g(r) rⁿ dr`, evaluated piecewise.
    pub radial_integral: f64,
}

/// One increment `C_m − C_{m−1} = m (1/m − (m+1)^{−(m+1)/m})`.
pub fn c_increment(m: usize) -> f64 {
    let mf = m as f64;
    // 1 − m (m+1)^{−(m+1)/m} = −expm1(ln m − (m+1) ln(m+1) / m)
    -(mf.ln() - (mf + 1.0) * (mf + 1.0).ln() / mf).exp_m1()
}

pub fn projection_constant(n: usize, m: usize) -> Result<ProjectionConstant> {
    if m == 0 {
        return Err(Error::InvalidArgument("need m ≥ 1".into()));
    }
    let g = RadialStepFunction::new(n, m)?;
    let c_m = (1..=m).map(c_increment).sum();
    let radial: f64 = (1..=m)
        .map(|j| g.piece_power_integral(j, 1.0, (n + 1) as f64))
        .sum();
    Ok(ProjectionConstant {
        c_m,
        radial_integral: 2.0 * radial,
    })
}

/// `P f_m(z) = 2 C_m / z_n^{n−1}`.
pub fn projected_fm(n: usize, m: usize, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: z.len(),
        });
    }
    let zn = z[n - 1];
    if zn.norm() == 0.0 {
        return Err(Error::ZeroCoordinate { index: n - 1 });
    }
    let pc = projection_constant(n, m)?;
    Ok(Complex64::new(pc.radial_integral, 0.0) / zn.powu(n as u32 - 1))
}

/// `V(ℍⁿ_k) = k!/n!`.
pub fn domain_volume(n: usize, k: usize) -> Result<f64> {
    check_nk(n, k)?;
    Ok((ln_factorial(k as u64) - ln_factorial(n as u64)).exp())
}

/// Exact `‖P f_m‖_p` for `p < 2n/(n−1)`.
pub fn projected_fm_norm(n: usize, k: usize, m: usize, p: f64) -> Result<f64> {
    check_nk(n, k)?;
    let nf = n as f64;
    let e = 2.0 * nf - p * (nf - 1.0);
    if !(e > 0.0) {
        return Err(Error::NonIntegrable(format!(
            "|z_n|^(−p(n−1)) is not integrable for p = {p}"
        )));
    }
    let pc = projection_constant(n, m)?;
    Ok(pc.radial_integral * (moment_constant(n, k) * 2.0 / e).powf(1.0 / p))
}

/// `H_m = Σ_{j≤m} 1/j`.
pub fn harmonic(m: usize) -> f64 {
    (1..=m).map(|j| 1.0 / j as f64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowupRow {
    pub m: usize,
    pub norm_fm: f64,
    /// `V^{1/p} · 2C_m ≤ ‖P f_m‖_p`.
    pub proj_lower_bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupTable {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub rows: Vec<BlowupRow>,
}

impl BlowupTable {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        use crate::output::fmt_num;
        writeln!(out, "m,norm_fm,proj_lower_bound,ratio")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                r.m,
                fmt_num(r.norm_fm),
                fmt_num(r.proj_lower_bound),
                fmt_num(r.ratio)
            )?;
        }
        Ok(())
    }

    /// True when the ratio column is strictly increasing.
    pub fn ratio_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ratio > w[0].ratio)
    }
}

/// Relative slack accepted on `p ≤ 2n/(n+1)` for truncated decimal input.
const ENDPOINT_SLACK: f64 = 1e-9;

/// Norms, projection lower bounds and their ratio for each `m` in `m_list`.
pub fn blowup_demo(n: usize, k: usize, p: f64, m_list: &[usize]) -> Result<BlowupTable> {
    check_nk(n, k)?;
    let endpoint = 2.0 * n as f64 / (n as f64 + 1.0);
    if !(p >= 1.0 && p <= endpoint * (1.0 + ENDPOINT_SLACK)) {
        return Err(Error::InvalidArgument(format!(
            "blow-up needs 1 ≤ p ≤ 2n/(n+1) = {endpoint}, got {p}"
        )));
    }
    let volume_root = domain_volume(n, k)?.powf(1.0 / p);
    let rows = m_list
        .iter()
        .map(|&m| {
            if m == 0 || m > MAX_M {
                return Err(Error::InvalidArgument(format!("m must lie in 1..={MAX_M}, got {m}")));
            }
            let norm_fm = fm_norm(n, k, m, p)?;
            let lower = volume_root * projection_constant(n, m)?.radial_integral;
            Ok(BlowupRow {
                m,
                norm_fm,
                proj_lower_bound: lower,
                ratio: lower / norm_fm,
            })
        })
        .collect::<Result<_>>()?;
    Ok(BlowupTable { n, k, p, rows })
}
