use num_complex::Complex64;

use super::{monomial_norm_sq_ball, KernelModel};
use crate::domains::{jacobian_det_g, map_f, HartogsDomainSpec};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Partial sum `Σ e_ν(w) conj(e_ν(η))` over the normalized monomial basis of
/// total degree `≤ degree`.
///
/// Basis elements are visited by total degree, lexicographically within a
/// degree. For a Hartogs model the product-model expansion is pushed
/// through `F` and divided by the Jacobian factors, mirroring the
/// transformation formula.
pub fn kernel_truncated(
    model: &KernelModel,
    degree: u32,
    w: &[Complex64],
    eta: &[Complex64],
) -> Result<Complex64> {
    let dim = model.dim();
    for v in [w, eta] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.len(),
            });
        }
    }
    match model {
        KernelModel::Disk => {
            let x = w[0] * eta[0].conj();
            let mut term = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=degree {
                acc += term * (j as f64 + 1.0);
                term *= x;
            }
            Ok(acc)
        }
        KernelModel::Ball(k) => Ok(sum_basis(degree, w, eta, |nu| monomial_norm_sq_ball(*k, nu))),
        KernelModel::Product(spec) => Ok(product_sum(spec, degree, w, eta)),
        KernelModel::Hartogs(spec) => {
            if !spec.is_standard() {
                return Err(Error::InvalidArgument(
                    "truncated kernels are only pushed through F on the standard model".into(),
                ));
            }
            let (n, k) = (spec.n(), spec.k());
            let fw = map_f(n, k, w)?;
            let feta = map_f(n, k, eta)?;
            let jw = jacobian_det_g(n, k, &fw)?;
            let jeta = jacobian_det_g(n, k, &feta)?;
            Ok(product_sum(spec, degree, &fw, &feta) / (jw * jeta.conj()))
        }
    }
}

fn product_sum(spec: &HartogsDomainSpec, degree: u32, w: &[Complex64], eta: &[Complex64]) -> Complex64 {
    sum_basis(degree, w, eta, |nu| {
        let c = nu.components();
        let balls: f64 = spec
            .blocks()
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let part = MultiIndex::new(c[spec.block_range(j)].to_vec());
                monomial_norm_sq_ball(b.k, &part)
            })
            .product();
        let disks: f64 = c[spec.k()..].iter().map(|&e| 1.0 / (e as f64 + 1.0)).product();
        balls * disks
    })
}

fn sum_basis<N>(degree: u32, w: &[Complex64], eta: &[Complex64], norm_sq: N) -> Complex64
where
    N: Fn(&MultiIndex) -> f64,
{
    MultiIndex::up_to_degree(w.len(), degree)
        .iter()
        .map(|nu| nu.monomial(w) * nu.monomial(eta).conj() / norm_sq(nu))
        .sum()
}
