//! Moving `L^p` estimates across the block biholomorphism `Φ`.
//!
//! `|det J_Φ|` is pinched between `c` and `d`; an `L^p` bound `C` for the
//! projection on the standard model then transfers with the factor
//! `c^{−|p−2|} d^{|p−2|}`. Affine blocks give exact bounds, anything else
//! is sampled and widened by a safety margin.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::domains::draw_product_point;
use crate::domains::{contains, jacobian_det_g, map_g, HartogsDomainSpec, MapFamily};
use crate::error::{Error, Result};
use crate::mc::{estimate, estimate_mean, generate, unit_disk, Estimate};

/// Factor applied to the sampled minimum of `|det J_Φ|`.
pub const LOWER_MARGIN: f64 = 0.9;
/// Factor applied to the sampled maximum of `|det J_Φ|`.
pub const UPPER_MARGIN: f64 = 1.1;

/// `det J_Φ(z) = ∏_j det J_{φ_j}(z̃_j)`.
pub fn jacobian_det_phi(spec: &HartogsDomainSpec, z: &[Complex64]) -> Result<Complex64> {
    if z.len() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            actual: z.len(),
        });
    }
    spec.blocks()
        .iter()
        .enumerate()
        .try_fold(Complex64::new(1.0, 0.0), |acc, (j, b)| {
            Ok(acc * b.map.jacobian_det(&z[spec.block_range(j)])?)
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BoundsMethod {
    Exact,
    /// Not certified: min/max over `samples` domain points, then widened.
    Sampled { samples: usize },
}

/// `0 < c ≤ |det J_Φ| ≤ d` on the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobianBounds {
    pub c: f64,
    pub d: f64,
    #[serde(flatten)]
    pub method: BoundsMethod,
    /// Smallest modulus actually seen (equals `c` for exact bounds).
    pub observed_min: f64,
    /// Largest modulus actually seen (equals `d` for exact bounds).
    pub observed_max: f64,
}

impl JacobianBounds {
    pub fn exact(c: f64, d: f64) -> Result<Self> {
        let b = Self {
            c,
            d,
            method: BoundsMethod::Exact,
            observed_min: c,
            observed_max: d,
        };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        if self.c > 0.0 && self.c <= self.d && self.d.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "Jacobian bounds need 0 < c ≤ d < ∞, got c = {}, d = {}",
                self.c, self.d
            )))
        }
    }

    pub fn is_exact(&self) -> bool {
        self.method == BoundsMethod::Exact
    }
}

/// Exact bounds when every block is affine or the identity, sampled otherwise
/// (`cfg.mc_samples` points, margins [`LOWER_MARGIN`]/[`UPPER_MARGIN`]).
pub fn jacobian_bounds(spec: &HartogsDomainSpec, cfg: &NumericConfig) -> Result<JacobianBounds> {
    let constant = spec.blocks().iter().try_fold(1.0, |acc, b| match &b.map {
        MapFamily::Identity => Some(acc),
        MapFamily::Affine(a) => Some(acc * a.det().norm()),
        MapFamily::RationalExample => None,
    });
    match constant {
        Some(c) => JacobianBounds::exact(c, c),
        None => {
            let (lo, hi) = sampled_extremes(spec, cfg.mc_samples, cfg.seed)?;
            let b = JacobianBounds {
                c: LOWER_MARGIN * lo,
                d: UPPER_MARGIN * hi,
                method: BoundsMethod::Sampled {
                    samples: cfg.mc_samples,
                },
                observed_min: lo,
                observed_max: hi,
            };
            b.validate()?;
            Ok(b)
        }
    }
}

/// Min and max of `|det J_Φ|` over `samples` points `Φ⁻¹(G(w))`.
pub fn sampled_extremes(spec: &HartogsDomainSpec, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let (n, k) = (spec.n(), spec.k());
    let values: Vec<Result<f64>> = generate(seed, samples, |rng| {
        let z = map_g(n, k, &draw_product_point(spec, rng))?;
        let x = crate::domains::map_phi_inverse(spec, &z)?;
        Ok(jacobian_det_phi(spec, &x)?.norm())
    });
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        let v = v?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// `C · c^{−|p−2|} · d^{|p−2|}`.
pub fn transfer_norm_bound(constant: f64, bounds: &JacobianBounds, p: f64) -> Result<f64> {
    if !(constant > 0.0) {
        return Err(Error::InvalidArgument(format!("C must be positive, got {constant}")));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("p must be at least 1, got {p}")));
    }
    bounds.validate()?;
    if p == 2.0 || bounds.c == bounds.d {
        return Ok(constant);
    }
    let e = (p - 2.0).abs();
    Ok(constant * (bounds.d / bounds.c).powf(e))
}

/// Both sides of the change of variables `∫_Ω |f∘Φ · det J_Φ|² = ∫_{ℍ} |f|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    /// Left side, by rejection sampling in a box around the source domain.
    pub source: Estimate,
    /// Right side, through `G` from the product model.
    pub target: Estimate,
    pub z_score: f64,
    pub passed: bool,
}

/// Acceptance threshold for [`IsometryReport::z_score`].
pub const ISOMETRY_SIGMAS: f64 = 3.0;

/// Center and radius of a disk containing coordinate `i` of the source domain.
fn bounding_disks(spec: &HartogsDomainSpec) -> Vec<(Complex64, f64)> {
    let mut out = Vec::with_capacity(spec.n());
    let unit = (Complex64::new(0.0, 0.0), 1.0);
    for b in spec.blocks() {
        match &b.map {
            MapFamily::Identity => out.extend(std::iter::repeat_n(unit, b.k)),
            MapFamily::Affine(a) => {
                // z̃ = A⁻¹(u − b) with |u| < 1
                let inv = a.inverse_matrix();
                let center = -(inv * a.shift());
                for i in 0..b.k {
                    let radius = inv.row(i).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                    out.push((center[i], radius));
                }
            }
            MapFamily::RationalExample => {
                // z₂ = (u₂ − 1)/3, z₁ = u₁ (z₂ − 10)
                out.push((Complex64::new(0.0, 0.0), 10.0 + 2.0 / 3.0));
                out.push((Complex64::new(-1.0 / 3.0, 0.0), 1.0 / 3.0));
            }
        }
    }
    out.extend(std::iter::repeat_n(unit, spec.n() - spec.k()));
    out
}

/// Monte-Carlo check of the weighted pullback identity for a test function
/// `f` defined on the standard model. Shares `cfg.seed` between both sides
/// through distinct stream families.
pub fn pullback_isometry_check<F>(
    spec: &HartogsDomainSpec,
    f: F,
    cfg: &NumericConfig,
) -> Result<IsometryReport>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    let (n, k) = (spec.n(), spec.k());
    let disks = bounding_disks(spec);
    // normalized measure: Lebesgue · ∏ k_j! / πⁿ
    let box_volume = spec
        .blocks()
        .iter()
        .map(|b| crate::special::ln_factorial(b.k as u64).exp())
        .product::<f64>()
        * disks.iter().map(|(_, r)| r * r).product::<f64>();

    let source = estimate_mean(cfg.seed, cfg.mc_samples, |rng| {
        let z: Vec<Complex64> = disks.iter().map(|&(c, r)| c + r * unit_disk(rng)).collect();
        match contains(spec, &z) {
            Ok(true) => {
                let u = crate::domains::map_phi(spec, &z).expect("inside the domain");
                let jac = jacobian_det_phi(spec, &z).expect("inside the domain");
                (f(&u) * jac).norm_sqr()
            }
            _ => 0.0,
        }
    })
    .scaled(box_volume);

    let standard = spec.standard_model();
    let [target] = estimate(cfg.seed ^ TARGET_STREAM, cfg.mc_samples, |rng| {
        let w = draw_product_point(&standard, rng);
        let u = map_g(n, k, &w).expect("dimensions match");
        let jac = jacobian_det_g(n, k, &w).expect("dimensions match");
        [(f(&u) * jac).norm_sqr()]
    });

    let z_score = source.z_score_against(&target);
    Ok(IsometryReport {
        source,
        target,
        z_score,
        passed: z_score.abs() < ISOMETRY_SIGMAS,
    })
}

const TARGET_STREAM: u64 = 0x7a26_e7;
