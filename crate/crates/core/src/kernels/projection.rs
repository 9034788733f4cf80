use num_complex::Complex64;

use super::kernel_product;
use crate::domains::{contains, draw_product_point, jacobian_det_g, map_f, map_g, HartogsDomainSpec};
use crate::error::{Error, Result};
use crate::mc::{estimate_complex, ComplexEstimate};

/// Monte-Carlo Bergman projection `P f(z) = ∫ K(z, ζ) f(ζ) dV(ζ)` on a
/// standard model.
///
/// The integral is carried to the product model, where it reads
/// `∫ K_prod(F z, η) f(G η) det J_G(η) / det J_G(F z) dV(η)` and is averaged
/// over uniform product-model samples.
pub fn bergman_projection_mc<F>(
    spec: &HartogsDomainSpec,
    f: F,
    z: &[Complex64],
    samples: usize,
    seed: u64,
) -> Result<ComplexEstimate>
where
    F: Fn(&[Complex64]) -> Complex64 + Sync,
{
    if !spec.is_standard() {
        return Err(Error::InvalidArgument(
            "Monte-Carlo projection is implemented on the standard model".into(),
        ));
    }
    if !contains(spec, z)? {
        return Err(Error::OutsideDomain(format!("{z:?}")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let (n, k) = (spec.n(), spec.k());
    let w = map_f(n, k, z)?;
    let jw = jacobian_det_g(n, k, &w)?;
    Ok(estimate_complex(seed, samples, |rng| {
        let eta = draw_product_point(spec, rng);
        let zeta = map_g(n, k, &eta).expect("dimensions match");
        let kern = kernel_product(spec, &w, &eta).expect("dimensions match");
        let jeta = jacobian_det_g(n, k, &eta).expect("dimensions match");
        kern * f(&zeta) * jeta / jw
    }))
}
