use num_complex::Complex64;
use rand::Rng;

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::kernels::inner;
use crate::mc::{estimate_mean, unit_phase, unit_sphere, Estimate, SampleRng};
use crate::multi_index::MultiIndex;

/// Monte-Carlo `∫_{𝕊^k} |ξ^ν|² dσ(ξ)` with uniform sphere samples.
pub fn sphere_moment_mc(k: usize, nu: &MultiIndex, samples: usize, seed: u64) -> Result<Estimate> {
    if k == 0 || nu.dim() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: nu.dim(),
        });
    }
    Ok(estimate_mean(seed, samples, |rng| {
        nu.monomial(&unit_sphere(rng, k)).norm_sqr()
    }))
}

/// Radial importance density for weights `ρ^a (1 − ρ)^α` on `(0, 1)`.
///
/// An equal mixture of `(a+1) ρ^a` and `(α+1)(1 − ρ)^α` keeps the
/// importance weight bounded for every `a, α > −1`, so the estimators below
/// have finite variance even where the integrand itself does not.
#[derive(Debug, Clone, Copy)]
struct RadialWeight {
    a: f64,
    alpha: f64,
}

impl RadialWeight {
    /// Draws `ρ` and the weight `ρ^a (1 − ρ)^α / q(ρ)`.
    ///
    /// `1 − ρ` is drawn directly on the second branch so that mass piled up
    /// next to `ρ = 1` is not lost to rounding.
    fn draw(&self, rng: &mut SampleRng) -> (f64, f64) {
        let pick: f64 = rng.random();
        let u: f64 = 1.0 - rng.random::<f64>();
        let (rho, one_minus) = if pick < 0.5 {
            let rho = u.powf(1.0 / (self.a + 1.0));
            (rho, 1.0 - rho)
        } else {
            let om = u.powf(1.0 / (self.alpha + 1.0));
            (1.0 - om, om)
        };
        let denom = (self.a + 1.0) * one_minus.powf(-self.alpha) + (self.alpha + 1.0) * rho.powf(-self.a);
        (rho, 2.0 / denom)
    }
}

/// Monte-Carlo estimate of `J_α(w)` straight from its defining integral.
///
/// `η = √ρ ξ` with `ξ` uniform on the sphere and `ρ` drawn from
/// [`RadialWeight`] with `a = k − 1`.
pub fn j_alpha_mc(k: usize, alpha: f64, w: &[Complex64], cfg: &NumericConfig) -> Result<Estimate> {
    if w.len() != k || k == 0 {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: w.len(),
        });
    }
    if !(alpha > -1.0) {
        return Err(Error::NonIntegrable(format!("J_α needs α > −1, got {alpha}")));
    }
    if !(crate::domains::norm(w) < 1.0) {
        return Err(Error::OutsideDomain("J_α needs |w| < 1".into()));
    }
    let radial = RadialWeight {
        a: k as f64 - 1.0,
        alpha,
    };
    let power = k as u32 + 1;
    let kf = k as f64;
    Ok(estimate_mean(cfg.seed, cfg.mc_samples, |rng| {
        let (rho, weight) = radial.draw(rng);
        let s = rho.sqrt();
        let eta: Vec<Complex64> = unit_sphere(rng, k).into_iter().map(|c| c * s).collect();
        let base = (Complex64::new(1.0, 0.0) - inner(w, &eta)).norm();
        kf * weight / base.powi(power as i32)
    }))
}

/// Monte-Carlo estimate of `I_{α,β}(w)` from its defining integral over `𝔻*`.
pub fn i_alpha_beta_mc(alpha: f64, beta: f64, w: Complex64, cfg: &NumericConfig) -> Result<Estimate> {
    if !(alpha > -1.0) || !(beta > -2.0) {
        return Err(Error::NonIntegrable(format!(
            "I_(α,β) needs α > −1 and β > −2, got α = {alpha}, β = {beta}"
        )));
    }
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideDomain("I_(α,β) needs |w| < 1".into()));
    }
    let radial = RadialWeight { a: beta / 2.0, alpha };
    Ok(estimate_mean(cfg.seed, cfg.mc_samples, |rng| {
        let (rho, weight) = radial.draw(rng);
        let eta = unit_phase(rng) * rho.sqrt();
        weight / (Complex64::new(1.0, 0.0) - w * eta.conj()).norm_sqr()
    }))
}
