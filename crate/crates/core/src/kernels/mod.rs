//! Bergman kernels of the punctured disk, the ball, the product model and
//! the Hartogs domains.
//!
//! Volumes are normalized so that `V(𝔻*) = V(𝔹^k) = 1`; on a Hartogs domain
//! the measure is the one carried over from the product model by `G`
//! (Lebesgue measure times `∏ k_j! / πⁿ`). Integer powers are taken by
//! repeated multiplication.

mod projection;
mod truncated;

pub use projection::bergman_projection_mc;
pub use truncated::kernel_truncated;

use num_complex::Complex64;

use crate::domains::{in_product_model, 
    contains, jacobian_det_g, map_f, map_phi, HartogsDomainSpec,
};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::special::{ln_factorial, ln_gamma};
use crate::transfer::jacobian_det_phi;

/// Which kernel to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelModel {
    Disk,
    Ball(usize),
    Product(HartogsDomainSpec),
    Hartogs(HartogsDomainSpec),
}

impl KernelModel {
    pub fn dim(&self) -> usize {
        match self {
            KernelModel::Disk => 1,
            KernelModel::Ball(k) => *k,
            KernelModel::Product(s) | KernelModel::Hartogs(s) => s.n(),
        }
    }

    pub fn evaluate(&self, w: &[Complex64], eta: &[Complex64]) -> Result<Complex64> {
        match self {
            KernelModel::Disk => {
                check_len(1, w)?;
                check_len(1, eta)?;
                for p in [w, eta] {
                    let r = p[0].norm();
                    if !(r > 0.0 && r < 1.0) {
                        return Err(Error::OutsideDomain(format!("{p:?}")));
                    }
                }
                Ok(kernel_punctured_disk(w[0], eta[0]))
            }
            KernelModel::Ball(k) => {
                check_len(*k, w)?;
                check_len(*k, eta)?;
                for p in [w, eta] {
                    if p.iter().map(|c| c.norm_sqr()).sum::<f64>() >= 1.0 {
                        return Err(Error::OutsideDomain(format!("{p:?}")));
                    }
                }
                kernel_ball(*k, w, eta)
            }
            KernelModel::Product(s) => {
                for p in [w, eta] {
                    if !in_product_model(s, p)? {
                        return Err(Error::OutsideDomain(format!("{p:?}")));
                    }
                }
                kernel_product(s, w, eta)
            }
            KernelModel::Hartogs(s) => kernel_hartogs(s, w, eta),
        }
    }
}

fn check_len(expected: usize, v: &[Complex64]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: v.len(),
        });
    }
    Ok(())
}

/// `⟨w, η⟩ = Σ w_j conj(η_j)`.
pub fn inner(w: &[Complex64], eta: &[Complex64]) -> Complex64 {
    w.iter().zip(eta).map(|(a, b)| a * b.conj()).sum()
}

/// `K_{𝔻*}(w, η) = 1 / (1 − w conj(η))²`.
pub fn kernel_punctured_disk(w: Complex64, eta: Complex64) -> Complex64 {
    let base = Complex64::new(1.0, 0.0) - w * eta.conj();
    (base * base).inv()
}

/// `K_{𝔹^k}(w, η) = 1 / (1 − ⟨w, η⟩)^{k+1}`.
pub fn kernel_ball(k: usize, w: &[Complex64], eta: &[Complex64]) -> Result<Complex64> {
    check_len(k, w)?;
    check_len(k, eta)?;
    let base = Complex64::new(1.0, 0.0) - inner(w, eta);
    Ok(base.powu(k as u32 + 1).inv())
}

/// Kernel of `𝔹^{k_1} × … × 𝔹^{k_l} × (𝔻*)^{n−k}` as a product of factor kernels.
pub fn kernel_product(spec: &HartogsDomainSpec, w: &[Complex64], eta: &[Complex64]) -> Result<Complex64> {
    check_len(spec.n(), w)?;
    check_len(spec.n(), eta)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for (j, b) in spec.blocks().iter().enumerate() {
        let r = spec.block_range(j);
        acc *= kernel_ball(b.k, &w[r.clone()], &eta[r])?;
    }
    for j in spec.k()..spec.n() {
        acc *= kernel_punctured_disk(w[j], eta[j]);
    }
    Ok(acc)
}

/// Kernel of the standard model via the transformation formula, without the
/// membership check.
pub(crate) fn kernel_standard_unchecked(
    spec: &HartogsDomainSpec,
    z: &[Complex64],
    zeta: &[Complex64],
) -> Result<Complex64> {
    let (n, k) = (spec.n(), spec.k());
    let w = map_f(n, k, z)?;
    let eta = map_f(n, k, zeta)?;
    let jw = jacobian_det_g(n, k, &w)?;
    let jeta = jacobian_det_g(n, k, &eta)?;
    Ok(kernel_product(spec, &w, &eta)? / (jw * jeta.conj()))
}

/// Bergman kernel of `ℍⁿ_{k_j, φ_j}`.
///
/// On the standard model this is `K_prod(F z, F ζ) / (det J_G(F z) · conj det J_G(F ζ))`;
/// with nontrivial block maps the standard kernel is composed with `Φ` and
/// multiplied by `det J_Φ(z) · conj det J_Φ(ζ)`.
pub fn kernel_hartogs(spec: &HartogsDomainSpec, z: &[Complex64], zeta: &[Complex64]) -> Result<Complex64> {
    for p in [z, zeta] {
        if !contains(spec, p)? {
            return Err(Error::OutsideDomain(format!("{p:?}")));
        }
    }
    if spec.is_standard() {
        return kernel_standard_unchecked(spec, z, zeta);
    }
    let u = map_phi(spec, z)?;
    let v = map_phi(spec, zeta)?;
    let std = kernel_standard_unchecked(&spec.standard_model(), &u, &v)?;
    Ok(std * jacobian_det_phi(spec, z)? * jacobian_det_phi(spec, zeta)?.conj())
}

/// `∫_{𝔹^k} |η^ν|² dV(η) = k! ν! / (|ν| + k)!` under the normalized volume.
pub fn monomial_norm_sq_ball(k: usize, nu: &MultiIndex) -> f64 {
    let order = nu.order() as f64;
    (ln_factorial(k as u64) + nu.ln_factorial() - ln_gamma(order + k as f64 + 1.0)).exp()
}
