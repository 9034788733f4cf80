//! Log-domain Gamma and Beta helpers.
//!
//! `ln_gamma` is backed by the Lanczos approximation in `statrs`; everything
//! else in the crate goes through these wrappers so that Beta values and
//! factorial ratios are always assembled as sums of logarithms.

use statrs::function::gamma;

/// `ln Γ(x)` for `x > 0`.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    gamma::ln_gamma(x)
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b)`.
#[inline]
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Beta function, evaluated through [`ln_beta`].
#[inline]
pub fn beta(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// `ln(m!)`.
#[inline]
pub fn ln_factorial(m: u64) -> f64 {
    ln_gamma(m as f64 + 1.0)
}
