use serde::{Deserialize, Serialize};

use crate::config::SeriesConfig;
use crate::error::{Error, Result};
use crate::special::{ln_beta, ln_factorial, ln_gamma};

/// Result of summing one of the kernel-integral series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// False when the term cap was reached before the tail bound dropped
    /// below tolerance.
    pub converged: bool,
}

impl SeriesSum {
    /// Turns a capped sum into [`Error::NonConvergence`].
    pub fn require_converged(self, r: f64) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence { terms: self.terms, r })
        }
    }
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("radius must lie in [0, 1), got {r}")));
    }
    Ok(())
}

/// Sums `Σ_n exp(ln_coeff(n)) r^{2n}` for positive coefficients whose
/// ratio eventually stays below one.
///
/// The loop stops once the terms are non-increasing and the geometric bound
/// `term · r² / (1 − r²)` on the remaining tail is below
/// `tolerance · partial`.
fn sum_positive_series<C>(r: f64, cfg: &SeriesConfig, ln_coeff: C) -> SeriesSum
where
    C: Fn(f64) -> f64,
{
    let first = ln_coeff(0.0).exp();
    if r == 0.0 {
        return SeriesSum {
            value: first,
            terms: 1,
            converged: true,
        };
    }
    let r2 = r * r;
    let ln_r2 = r2.ln();
    let tail_factor = r2 / (1.0 - r2);
    let mut partial = first;
    let mut prev = first;
    let mut n = 1usize;
    while n < cfg.max_terms {
        let x = n as f64;
        let term = (ln_coeff(x) + x * ln_r2).exp();
        partial += term;
        n += 1;
        if term <= prev && term * tail_factor <= cfg.tolerance * partial {
            return SeriesSum {
                value: partial,
                terms: n,
                converged: true,
            };
        }
        prev = term;
    }
    SeriesSum {
        value: partial,
        terms: n,
        converged: false,
    }
}

/// Exact series for `J_α(w) = ∫_{𝔹^k} (1 − |η|²)^α / |1 − ⟨w, η⟩|^{k+1} dV(η)` at `|w| = r`.
///
/// Term `n` is
/// `Γ(n + (k+1)/2)² / (Γ(n+1)² Γ((k+1)/2)²) · k! n! / (n+k−1)! · B(α+1, n+k) · r^{2n}`,
/// assembled in the log domain.
pub fn j_alpha_series(k: usize, alpha: f64, r: f64, cfg: &SeriesConfig) -> Result<SeriesSum> {
    if k == 0 {
        return Err(Error::InvalidArgument("ball dimension must be at least 1".into()));
    }
    if !(alpha > -1.0) {
        return Err(Error::NonIntegrable(format!("J_α needs α > −1, got {alpha}")));
    }
    check_radius(r)?;
    let kf = k as f64;
    let half = (kf + 1.0) / 2.0;
    let ln_gamma_half = ln_gamma(half);
    let ln_k_fact = ln_factorial(k as u64);
    Ok(sum_positive_series(r, cfg, |x| {
        let pochhammer = 2.0 * (ln_gamma(x + half) - ln_gamma(x + 1.0) - ln_gamma_half);
        let sphere = ln_k_fact + ln_gamma(x + 1.0) - ln_gamma(x + kf);
        pochhammer + sphere + ln_beta(alpha + 1.0, x + kf)
    }))
}

/// Exact series for `I_{α,β}(w) = ∫_{𝔻*} (1 − |η|²)^α |η|^β / |1 − w conj(η)|² dV(η)`
/// at `|w| = r`: `Σ_n r^{2n} B(α + 1, n + β/2 + 1)`.
pub fn i_alpha_beta_series(alpha: f64, beta: f64, r: f64, cfg: &SeriesConfig) -> Result<SeriesSum> {
    if !(alpha > -1.0) || !(beta > -2.0) {
        return Err(Error::NonIntegrable(format!(
            "I_(α,β) needs α > −1 and β > −2, got α = {alpha}, β = {beta}"
        )));
    }
    check_radius(r)?;
    Ok(sum_positive_series(r, cfg, |x| ln_beta(alpha + 1.0, x + beta / 2.0 + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    #[test]
    fn zero_radius_is_first_term() {
        let cfg = SeriesConfig::default();
        let j = j_alpha_series(1, -0.5, 0.0, &cfg).unwrap();
        assert!((j.value - 2.0).abs() < 1e-13);
        for k in 1..=4usize {
            for &a in &[-0.9, -0.5, -0.1, 0.0, 0.7] {
                let got = j_alpha_series(k, a, 0.0, &cfg).unwrap().value;
                let want = k as f64 * beta(a + 1.0, k as f64);
                assert!((got - want).abs() / want < 1e-13);
            }
        }
        let i = i_alpha_beta_series(-0.5, 0.0, 0.0, &cfg).unwrap();
        assert!((i.value - 2.0).abs() < 1e-13);
        assert!((i_alpha_beta_series(0.0, 0.0, 0.0, &cfg).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn j_with_alpha_zero_and_k_one_is_log_kernel() {
        // k = 1, α = 0: Σ r^{2n}/(n+1) = −ln(1 − r²)/r²
        let cfg = SeriesConfig::default();
        for &r in &[0.1, 0.5, 0.9, 0.99] {
            let got = j_alpha_series(1, 0.0, r, &cfg).unwrap().value;
            let r2: f64 = r * r;
            let want = -(1.0 - r2).ln() / r2;
            assert!((got - want).abs() / want < 1e-10, "r = {r}: {got} vs {want}");
        }
    }

    #[test]
    fn monotone_in_r() {
        let cfg = SeriesConfig::default();
        let mut prev = 0.0;
        for i in 0..50 {
            let r = i as f64 / 50.0;
            let v = j_alpha_series(2, -0.5, r, &cfg).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn term_cap_raises_the_flag() {
        let cfg = SeriesConfig {
            tolerance: 1e-12,
            max_terms: 50,
        };
        let s = j_alpha_series(1, -0.5, 0.999, &cfg).unwrap();
        assert!(!s.converged);
        assert!(matches!(s.require_converged(0.999), Err(Error::NonConvergence { .. })));
        let s = i_alpha_beta_series(-0.5, 0.0, 0.999, &cfg).unwrap();
        assert!(!s.converged);
    }

    #[test]
    fn invalid_parameters() {
        let cfg = SeriesConfig::default();
        assert!(j_alpha_series(1, -1.0, 0.5, &cfg).is_err());
        assert!(i_alpha_beta_series(-0.5, -2.0, 0.5, &cfg).is_err());
        assert!(i_alpha_beta_series(-0.5, 0.0, 1.0, &cfg).is_err());
        assert!(j_alpha_series(0, -0.5, 0.5, &cfg).is_err());
    }
}
