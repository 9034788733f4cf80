use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{conjugate, SchurWitness};
use crate::config::{SeriesConfig, DEFAULT_SEED};
use crate::domains::HartogsDomainSpec;
use crate::error::{Error, Result};
use crate::estimates::{i_alpha_beta_series, j_alpha_series};
use crate::mc::{generate, SampleRng};

/// Sampling policy for [`schur_verify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Radii are drawn from `[min_modulus, max_modulus]`.
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub series: SeriesConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: DEFAULT_SEED,
            min_modulus: 1e-3,
            max_modulus: 0.99,
            series: SeriesConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioSummary {
    pub max: f64,
    pub mean: f64,
}

impl RatioSummary {
    fn of(values: impl Iterator<Item = f64> + Clone) -> Self {
        let count = values.clone().count().max(1) as f64;
        Self {
            max: values.clone().fold(f64::NEG_INFINITY, f64::max),
            mean: values.sum::<f64>() / count,
        }
    }
}

/// Summaries for each Schur inequality separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub first: RatioSummary,
    pub second: RatioSummary,
}

/// Sampled evidence for both Schur inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurReport {
    pub p: f64,
    pub q: f64,
    pub witness: SchurWitness,
    /// Over both conditions; `max` is the empirical Schur constant `M`.
    pub ratios_summary: RatioSummary,
    pub conditions: ConditionSummary,
    pub samples: usize,
    /// Per sample: (ratio for condition 1, ratio for condition 2).
    #[serde(skip)]
    pub ratios: Vec<(f64, f64)>,
}

impl SchurReport {
    pub fn empirical_m(&self) -> f64 {
        self.ratios_summary.max
    }
}

/// Radius drawn log-uniformly either in `r` or in `1 − r`, half the time each.
fn boundary_seeking_radius(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.random();
    if rng.random::<bool>() {
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    } else {
        let (a, b) = ((1.0 - hi).ln(), (1.0 - lo).ln());
        1.0 - (a + u * (b - a)).exp()
    }
}

/// `∫ T(w,η) h(η)^e dμ(η) / h(w)^e` at a product-model point with the given
/// block radii and disk radii, as a product of one-variable reductions.
fn schur_ratio(
    spec: &HartogsDomainSpec,
    witness: &SchurWitness,
    e: f64,
    block_r: &[f64],
    disk_r: &[f64],
    cfg: &SeriesConfig,
) -> Result<f64> {
    let alpha = witness.s * e;
    let mut ratio = 1.0;
    for (b, &r) in spec.blocks().iter().zip(block_r) {
        let j = j_alpha_series(b.k, alpha, r, cfg)?.require_converged(r)?;
        ratio *= j / (1.0 - r * r).powf(alpha);
    }
    for (idx, &r) in disk_r.iter().enumerate() {
        let j = spec.k() + 1 + idx;
        let t = witness.t[&j];
        let beta = t * e + (j - 1) as f64;
        let i = i_alpha_beta_series(alpha, beta, r, cfg)?.require_converged(r)?;
        ratio *= i / ((1.0 - r * r).powf(alpha) * r.powf(beta));
    }
    Ok(ratio)
}

/// Samples interior points of the product model and evaluates the ratios of
/// both Schur integrals to `h^q` and `h^p`. Works for any standard-model
/// block structure; the block maps of `spec` are ignored.
pub fn schur_verify(
    spec: &HartogsDomainSpec,
    p: f64,
    witness: &SchurWitness,
    cfg: &VerifyConfig,
) -> Result<SchurReport> {
    let q = conjugate(p)?;
    let (n, k) = (spec.n(), spec.k());
    if witness.t.len() != n - k || (k + 1..=n).any(|j| !witness.t.contains_key(&j)) {
        return Err(Error::InvalidArgument(format!(
            "witness must carry t_j for j = {}..={n}",
            k + 1
        )));
    }
    if !(0.0 < cfg.min_modulus && cfg.min_modulus < cfg.max_modulus && cfg.max_modulus < 1.0) {
        return Err(Error::InvalidArgument(
            "need 0 < min_modulus < max_modulus < 1".into(),
        ));
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let blocks = spec.blocks().len();
    let radii: Vec<Vec<f64>> = generate(cfg.seed, cfg.samples, |rng| {
        (0..blocks + n - k)
            .map(|_| boundary_seeking_radius(rng, cfg.min_modulus, cfg.max_modulus))
            .collect()
    });
    let ratios: Vec<(f64, f64)> = radii
        .par_iter()
        .map(|r| {
            let (br, dr) = r.split_at(blocks);
            let first = schur_ratio(spec, witness, q, br, dr, &cfg.series)?;
            let second = schur_ratio(spec, witness, p, br, dr, &cfg.series)?;
            Ok((first, second))
        })
        .collect::<Result<_>>()?;
    let first = RatioSummary::of(ratios.iter().map(|r| r.0));
    let second = RatioSummary::of(ratios.iter().map(|r| r.1));
    let all = RatioSummary::of(ratios.iter().flat_map(|r| [r.0, r.1]));
    Ok(SchurReport {
        p,
        q,
        witness: witness.clone(),
        ratios_summary: all,
        conditions: ConditionSummary { first, second },
        samples: cfg.samples,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::feasible_params;

    fn small() -> VerifyConfig {
        VerifyConfig {
            samples: 64,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn valid_witness_gives_finite_ratios() {
        let spec = HartogsDomainSpec::triangle(2, 1).unwrap();
        let w = feasible_params(2, 1, 2.0).unwrap().unwrap();
        let rep = schur_verify(&spec, 2.0, &w, &small()).unwrap();
        assert!(rep.ratios.iter().all(|(a, b)| a.is_finite() && *a > 0.0 && b.is_finite() && *b > 0.0));
        assert_eq!(rep.ratios.len(), 64);
        // p = q: both conditions coincide
        assert_eq!(rep.conditions.first, rep.conditions.second);
    }

    #[test]
    fn divergent_weight_is_reported() {
        let spec = HartogsDomainSpec::triangle(2, 1).unwrap();
        let broken = SchurWitness::new(1, -0.25, &[-2.0]);
        assert!(matches!(
            schur_verify(&spec, 2.0, &broken, &small()),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn rejects_bad_witness_shape() {
        let spec = HartogsDomainSpec::triangle(3, 1).unwrap();
        let w = SchurWitness::new(1, -0.25, &[-1.0]);
        assert!(schur_verify(&spec, 2.0, &w, &small()).is_err());
    }

    #[test]
    fn radius_sampler_stays_in_range() {
        let rs: Vec<f64> = generate(1, 10_000, |rng| boundary_seeking_radius(rng, 1e-3, 0.99));
        assert!(rs.iter().all(|&r| (1e-3..=0.99).contains(&r)));
        assert!(rs.iter().any(|&r| r > 0.98) && rs.iter().any(|&r| r < 0.01));
    }
}
