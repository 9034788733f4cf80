use num_complex::Complex64;

use super::{map_g, map_phi_inverse, ComplexPoint, HartogsDomainSpec};
use crate::mc::{generate, unit_ball, unit_disk, SampleRng};

/// One uniform point of the product model `𝔹^{k_1} × … × (𝔻*)^{n−k}`.
pub fn draw_product_point(spec: &HartogsDomainSpec, rng: &mut SampleRng) -> Vec<Complex64> {
    let mut w = Vec::with_capacity(spec.n());
    for b in spec.blocks() {
        w.extend(unit_ball(rng, b.k));
    }
    for _ in spec.k()..spec.n() {
        w.push(unit_disk(rng));
    }
    w
}

/// `count` points uniform for the normalized volume of the product model.
pub fn sample_product_model(spec: &HartogsDomainSpec, count: usize, seed: u64) -> Vec<ComplexPoint> {
    generate(seed, count, |rng| ComplexPoint(draw_product_point(spec, rng)))
}

/// Images under `G` of product-model samples; points of the standard model.
pub fn sample_standard_model(spec: &HartogsDomainSpec, count: usize, seed: u64) -> Vec<ComplexPoint> {
    let (n, k) = (spec.n(), spec.k());
    generate(seed, count, |rng| {
        map_g(n, k, &draw_product_point(spec, rng)).expect("dimensions match")
    })
}

/// Points of `ℍⁿ_{k_j,φ_j}` obtained as `Φ⁻¹ ∘ G` of product-model samples.
///
/// The distribution is the pushforward of the product measure, not the
/// volume measure of the domain.
pub fn sample_hartogs_domain(spec: &HartogsDomainSpec, count: usize, seed: u64) -> Vec<ComplexPoint> {
    let (n, k) = (spec.n(), spec.k());
    generate(seed, count, |rng| {
        let z = map_g(n, k, &draw_product_point(spec, rng)).expect("dimensions match");
        map_phi_inverse(spec, &z).expect("block inverses are entire on the ball")
    })
}
