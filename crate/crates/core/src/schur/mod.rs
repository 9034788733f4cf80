//! Schur-test windows for the weight
//! `h(η) = ∏_j (1 − |η̃_j|²)^s · ∏_{j>k} (1 − |η_j|²)^s |η_j|^{t_j}`
//! on the product model, the resulting sharp `p`-range, and a sampled
//! verifier of the two Schur inequalities.
//!
//! Condition (1) with exponent `q` needs `−1 < sq < 0` and
//! `−2 < t_j q + j − 1 ≤ 0` for `j = k+1, …, n` (1-based `j`); condition (2)
//! is the same system with `p`. Both are checked with exact interval
//! arithmetic on the binary value of `p`, so feasibility is deterministic.

mod verify;
mod window;

pub use verify::{schur_verify, ConditionSummary, RatioSummary, SchurReport, VerifyConfig};
pub use window::FeasibilityWindow;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bisection steps used by [`search_p_range`].
pub const BISECTION_STEPS: usize = 60;

/// `q = p / (p − 1)`.
pub fn conjugate(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(p / (p - 1.0))
}

fn check_p(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("need 1 < p < ∞, got {p}")))
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k < n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Windows for `s` and for `t_j`, `j = k+1, …, n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamWindows {
    pub s: FeasibilityWindow,
    /// Keyed by the 1-based coordinate index `j`.
    pub t: BTreeMap<usize, FeasibilityWindow>,
}

impl ParamWindows {
    pub fn is_feasible(&self) -> bool {
        !self.s.is_empty() && self.t.values().all(|w| !w.is_empty())
    }

    fn intersect(&self, other: &Self) -> Self {
        Self {
            s: self.s.intersect(&other.s),
            t: self
                .t
                .iter()
                .map(|(j, w)| (*j, w.intersect(&other.t[j])))
                .collect(),
        }
    }
}

/// Windows from one Schur inequality, written with the reciprocal `inv = 1/e`
/// of its exponent `e`: `s ∈ (−inv, 0)`, `t_j ∈ (−(j+1)·inv, −(j−1)·inv]`.
fn system_windows_inv(n: usize, k: usize, inv: f64) -> ParamWindows {
    ParamWindows {
        s: FeasibilityWindow::open(-inv, 0.0),
        t: (k + 1..=n)
            .map(|j| {
                let jf = j as f64;
                (j, FeasibilityWindow::open_closed(-(jf + 1.0) * inv, -(jf - 1.0) * inv))
            })
            .collect(),
    }
}

/// Windows from the single system with exponent `e > 1`.
pub fn system_windows(n: usize, k: usize, e: f64) -> Result<ParamWindows> {
    check_nk(n, k)?;
    check_p(e)?;
    Ok(system_windows_inv(n, k, 1.0 / e))
}

/// Intersection of the windows from both Schur inequalities at `p`.
///
/// `1/q` is taken as `1 − 1/p` so that `p` and `q` enter symmetrically.
pub fn param_windows(n: usize, k: usize, p: f64) -> Result<ParamWindows> {
    check_nk(n, k)?;
    check_p(p)?;
    let inv_p = 1.0 / p;
    let inv_q = 1.0 - inv_p;
    Ok(system_windows_inv(n, k, inv_q).intersect(&system_windows_inv(n, k, inv_p)))
}

/// Exponents of the Schur weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurWitness {
    pub s: f64,
    /// Keyed by the 1-based coordinate index `j = k+1, …, n`.
    pub t: BTreeMap<usize, f64>,
}

impl SchurWitness {
    /// Witness for the coordinates `j = k+1, …, n` with all `t_j` given in order.
    pub fn new(k: usize, s: f64, t: &[f64]) -> Self {
        Self {
            s,
            t: t.iter().enumerate().map(|(i, &v)| (k + 1 + i, v)).collect(),
        }
    }

    pub fn lies_in(&self, windows: &ParamWindows) -> bool {
        windows.s.contains(self.s)
            && windows.t.len() == self.t.len()
            && windows
                .t
                .iter()
                .all(|(j, w)| self.t.get(j).is_some_and(|&v| w.contains(v)))
    }
}

/// `a · 2^e` compared with `b`, exactly.
fn cmp_scaled(a: u128, e: i32, b: u128) -> Ordering {
    if a == 0 {
        return 0.cmp(&b);
    }
    let bits = 128 - a.leading_zeros() as i32;
    if e >= 0 {
        if bits + e > 127 {
            Ordering::Greater
        } else {
            (a << e).cmp(&b)
        }
    } else {
        let shift = -e;
        let b_bits = 128 - b.leading_zeros() as i32;
        if b == 0 {
            Ordering::Greater
        } else if b_bits + shift > 127 {
            Ordering::Less
        } else {
            a.cmp(&(b << shift))
        }
    }
}

/// `(mantissa, exponent)` with `x = mantissa · 2^exponent` for finite `x > 0`.
fn decompose(x: f64) -> (u128, i32) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (frac as u128, -1074)
    } else {
        ((frac | (1u64 << 52)) as u128, exp - 1075)
    }
}

/// Exact test that every window is nonempty at the binary value of `p`.
///
/// The `s`-window is never empty. The `t_j`-window is nonempty iff
/// `(j+1)/q > (j−1)/p` and `(j+1)/p > (j−1)/q`, i.e.
/// `(j+1)·p > 2j > (j−1)·p`; the tightest case is `j = n`.
pub fn is_feasible_exact(n: usize, k: usize, p: f64) -> Result<bool> {
    check_nk(n, k)?;
    check_p(p)?;
    let (m, e) = decompose(p);
    Ok((k + 1..=n).all(|j| {
        let j = j as u128;
        let two_j = 2 * j;
        cmp_scaled((j + 1) * m, e, two_j) == Ordering::Greater
            && cmp_scaled((j - 1) * m, e, two_j) == Ordering::Less
    }))
}

/// Interior-midpoint witness, or `None` when some window is empty.
///
/// Emptiness is decided exactly for the binary value of `p`; the witness is
/// then taken from the floating-point windows.
pub fn feasible_params(n: usize, k: usize, p: f64) -> Result<Option<SchurWitness>> {
    let w = param_windows(n, k, p)?;
    if !is_feasible_exact(n, k, p)? {
        return Ok(None);
    }
    Ok(Some(SchurWitness {
        s: 0.5 * (w.s.lower + w.s.upper),
        t: w.t.iter().map(|(j, win)| (*j, 0.5 * (win.lower + win.upper))).collect(),
    }))
}

/// Closed-form range `(2n/(n+1), 2n/(n−1))`; it depends on `n` alone.
pub fn admissible_p_range(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n ≥ 2, got {n}")));
    }
    let nf = n as f64;
    Ok((2.0 * nf / (nf + 1.0), 2.0 * nf / (nf - 1.0)))
}

/// Locates both ends of the feasible `p`-set by bisection on [`feasible_params`].
pub fn search_p_range(n: usize, k: usize) -> Result<(f64, f64)> {
    check_nk(n, k)?;
    let feasible = |p: f64| -> Result<bool> { Ok(feasible_params(n, k, p)?.is_some()) };
    if !feasible(2.0)? {
        return Err(Error::InvalidArgument("p = 2 is infeasible".into()));
    }
    // lower end: infeasible at `lo`, feasible at `hi`
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let low = hi;

    let mut top = 4.0_f64;
    while feasible(top)? {
        top *= 2.0;
        if top > 1e6 {
            return Err(Error::InvalidArgument("no upper end found".into()));
        }
    }
    let (mut lo, mut hi) = (2.0_f64, top);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((low, lo))
}
