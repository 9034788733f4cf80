//! Generalized Hartogs triangles, the product model and the maps between them.
//!
//! A domain is given by `n` and an ordered list of blocks `(k_j, φ_j)`:
//!
//! ```text
//! { z ∈ ℂⁿ : max_j |φ_j(z̃_j)| < |z_{k+1}| < … < |z_n| < 1 },   k = Σ k_j < n
//! ```
//!
//! With every `φ_j` the identity this is the standard model. `F`/`G`
//! transfer the standard model to `𝔹^{k_1} × … × 𝔹^{k_l} × (𝔻*)^{n−k}` and
//! `Φ` strips the block maps.

mod maps;
mod sampling;

pub use maps::{AffineMap, MapFamily};
pub use sampling::{
    draw_product_point, sample_hartogs_domain, sample_product_model, sample_standard_model,
};

use std::ops::Deref;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite point of `ℂ^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct ComplexPoint(Vec<Complex64>);

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("point has non-finite coordinates".into()));
        }
        Ok(Self(coords))
    }

    /// Point with real coordinates.
    pub fn real(coords: &[f64]) -> Self {
        Self(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Point from interleaved `re, im` pairs.
    pub fn from_interleaved(parts: &[f64]) -> Result<Self> {
        if parts.len() % 2 != 0 {
            return Err(Error::InvalidArgument(
                "interleaved coordinates need an even count".into(),
            ));
        }
        Self::new(parts.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect())
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

impl Deref for ComplexPoint {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl TryFrom<Vec<Complex64>> for ComplexPoint {
    type Error = Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ComplexPoint> for Vec<Complex64> {
    fn from(p: ComplexPoint) -> Self {
        p.0
    }
}

/// One block `(k_j, φ_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub k: usize,
    pub map: MapFamily,
}

impl Block {
    pub fn identity(k: usize) -> Self {
        Self {
            k,
            map: MapFamily::Identity,
        }
    }
}

/// Dimensions and block maps of `ℍⁿ_{k_j, φ_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct HartogsDomainSpec {
    n: usize,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    n: usize,
    blocks: Vec<Block>,
}

impl TryFrom<SpecRepr> for HartogsDomainSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        Self::new(r.n, r.blocks)
    }
}

impl From<HartogsDomainSpec> for SpecRepr {
    fn from(s: HartogsDomainSpec) -> Self {
        SpecRepr {
            n: s.n,
            blocks: s.blocks,
        }
    }
}

impl HartogsDomainSpec {
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("at least one block is required".into()));
        }
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        offsets.push(0);
        for b in &blocks {
            if b.k == 0 {
                return Err(Error::InvalidSpec("block dimension must be at least 1".into()));
            }
            if let Some(d) = b.map.fixed_dim() {
                if d != b.k {
                    return Err(Error::InvalidSpec(format!(
                        "block of dimension {} carries a map of dimension {d}",
                        b.k
                    )));
                }
            }
            offsets.push(offsets.last().unwrap() + b.k);
        }
        let k = *offsets.last().unwrap();
        if k >= n {
            return Err(Error::InvalidSpec(format!("need 1 ≤ k < n, got k = {k}, n = {n}")));
        }
        Ok(Self { n, blocks, offsets })
    }

    /// The generalized Hartogs triangle `ℍⁿ_k` (one identity block).
    pub fn triangle(n: usize, k: usize) -> Result<Self> {
        Self::new(n, vec![Block::identity(k)])
    }

    /// The standard model `ℍⁿ_{k_j}` with identity blocks of the given sizes.
    pub fn standard(n: usize, block_dims: &[usize]) -> Result<Self> {
        Self::new(n, block_dims.iter().map(|&k| Block::identity(k)).collect())
    }

    /// The four-dimensional affine example: `φ₁(z₁) = 2z₁ − 1`,
    /// `φ₂(z₂, z₃) = (z₂ + z₃/2, z₃)`.
    pub fn affine_example() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let phi1 = AffineMap::from_rows(&[vec![2.0 * one]], &[-one]).expect("nonsingular");
        let phi2 = AffineMap::from_rows(&[vec![one, 0.5 * one], vec![zero, one]], &[zero, zero])
            .expect("nonsingular");
        Self::new(
            4,
            vec![
                Block {
                    k: 1,
                    map: MapFamily::Affine(phi1),
                },
                Block {
                    k: 2,
                    map: MapFamily::Affine(phi2),
                },
            ],
        )
        .expect("valid example")
    }

    /// The three-dimensional example with the rational block map.
    pub fn rational_example() -> Self {
        Self::new(
            3,
            vec![Block {
                k: 2,
                map: MapFamily::RationalExample,
            }],
        )
        .expect("valid example")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `k = Σ k_j`.
    pub fn k(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `m_0 = 0, m_j = k_1 + … + k_j`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Coordinate range of block `j` (0-based).
    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    /// True when every block map is the identity.
    pub fn is_standard(&self) -> bool {
        self.blocks.iter().all(|b| b.map.is_identity())
    }

    /// Same dimensions with all block maps replaced by the identity.
    pub fn standard_model(&self) -> Self {
        Self {
            n: self.n,
            blocks: self.blocks.iter().map(|b| Block::identity(b.k)).collect(),
            offsets: self.offsets.clone(),
        }
    }

    fn check_len(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: z.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn norm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Membership in `ℍⁿ_{k_j, φ_j}`: the strict chain
/// `max_j |φ_j(z̃_j)| < |z_{k+1}| < … < |z_n| < 1`.
///
/// Points where a block map has a pole are not in the domain.
pub fn contains(spec: &HartogsDomainSpec, z: &[Complex64]) -> Result<bool> {
    spec.check_len(z)?;
    let mut head = 0.0f64;
    for (j, b) in spec.blocks.iter().enumerate() {
        let part = &z[spec.block_range(j)];
        let r = match b.map.value(part) {
            Ok(v) => norm(&v),
            Err(Error::Pole(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        head = head.max(r);
    }
    let mut prev = head;
    for c in &z[spec.k()..] {
        let r = c.norm();
        if !(prev < r) {
            return Ok(false);
        }
        prev = r;
    }
    Ok(prev < 1.0)
}

/// Membership in `𝔹^{k_1} × … × 𝔹^{k_l} × (𝔻*)^{n−k}`.
pub fn in_product_model(spec: &HartogsDomainSpec, w: &[Complex64]) -> Result<bool> {
    spec.check_len(w)?;
    let balls = (0..spec.blocks.len()).all(|j| norm(&w[spec.block_range(j)]) < 1.0);
    let disks = w[spec.k()..].iter().all(|c| {
        let r = c.norm();
        r > 0.0 && r < 1.0
    });
    Ok(balls && disks)
}

fn check_nk(n: usize, k: usize, len: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k < n, got k = {k}, n = {n}")));
    }
    if len != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: len,
        });
    }
    Ok(())
}

/// `F(z) = (z₁/z_{k+1}, …, z_k/z_{k+1}, z_{k+1}/z_{k+2}, …, z_{n−1}/z_n, z_n)`.
pub fn map_f(n: usize, k: usize, z: &[Complex64]) -> Result<ComplexPoint> {
    check_nk(n, k, z.len())?;
    if let Some(i) = (k..n).find(|&i| z[i] == Complex64::new(0.0, 0.0)) {
        return Err(Error::ZeroCoordinate { index: i });
    }
    let mut w = Vec::with_capacity(n);
    w.extend(z[..k].iter().map(|&c| c / z[k]));
    w.extend((k..n - 1).map(|i| z[i] / z[i + 1]));
    w.push(z[n - 1]);
    Ok(ComplexPoint(w))
}

/// Inverse of [`map_f`].
///
/// `G(w)_i = w_i · (w_{k+1} ⋯ w_n)` for `i ≤ k` and `G(w)_j = w_j ⋯ w_n` for `j > k`.
pub fn map_g(n: usize, k: usize, w: &[Complex64]) -> Result<ComplexPoint> {
    check_nk(n, k, w.len())?;
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut tail = Complex64::new(1.0, 0.0);
    for j in (k..n).rev() {
        tail *= w[j];
        z[j] = tail;
    }
    for i in 0..k {
        z[i] = w[i] * z[k];
    }
    Ok(ComplexPoint(z))
}

/// `det J_G(w) = w_{k+1}^k ⋯ w_n^{n−1}`.
pub fn jacobian_det_g(n: usize, k: usize, w: &[Complex64]) -> Result<Complex64> {
    check_nk(n, k, w.len())?;
    Ok((k..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * w[j].powu(j as u32)))
}

/// `Φ(z) = (φ_1(z̃_1), …, φ_l(z̃_l), z_{k+1}, …, z_n)`.
pub fn map_phi(spec: &HartogsDomainSpec, z: &[Complex64]) -> Result<ComplexPoint> {
    spec.check_len(z)?;
    let mut out = Vec::with_capacity(spec.n);
    for (j, b) in spec.blocks.iter().enumerate() {
        out.extend(b.map.value(&z[spec.block_range(j)])?);
    }
    out.extend_from_slice(&z[spec.k()..]);
    ComplexPoint::new(out)
}

/// `Φ⁻¹(w) = (φ_1⁻¹(w̃_1), …, φ_l⁻¹(w̃_l), w_{k+1}, …, w_n)`.
pub fn map_phi_inverse(spec: &HartogsDomainSpec, w: &[Complex64]) -> Result<ComplexPoint> {
    spec.check_len(w)?;
    let mut out = Vec::with_capacity(spec.n);
    for (j, b) in spec.blocks.iter().enumerate() {
        out.extend(b.map.inverse(&w[spec.block_range(j)])?);
    }
    out.extend_from_slice(&w[spec.k()..]);
    ComplexPoint::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_invariants() {
        assert!(HartogsDomainSpec::triangle(2, 2).is_err());
        assert!(HartogsDomainSpec::triangle(2, 0).is_err());
        assert!(HartogsDomainSpec::standard(4, &[1, 0]).is_err());
        let s = HartogsDomainSpec::standard(5, &[1, 2]).unwrap();
        assert_eq!(s.offsets(), &[0, 1, 3]);
        assert_eq!(s.k(), 3);
        let bad = HartogsDomainSpec::new(
            3,
            vec![Block {
                k: 1,
                map: MapFamily::RationalExample,
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn membership_examples() {
        let h = HartogsDomainSpec::triangle(2, 1).unwrap();
        assert!(contains(&h, &ComplexPoint::real(&[0.3, 0.5])).unwrap());
        assert!(!contains(&h, &ComplexPoint::real(&[0.5, 0.3])).unwrap());
        assert!(!contains(&h, &ComplexPoint::real(&[0.0, 1.0])).unwrap());
        assert!(matches!(
            contains(&h, &ComplexPoint::real(&[0.1])),
            Err(Error::DimensionMismatch { .. })
        ));

        let ex = HartogsDomainSpec::affine_example();
        assert!(contains(&ex, &ComplexPoint::real(&[0.5, 0.0, 0.0, 0.5])).unwrap());
        assert!(!contains(&ex, &ComplexPoint::real(&[0.0, 0.0, 0.0, 0.5])).unwrap());
    }

    #[test]
    fn f_and_g_examples() {
        let w = map_f(2, 1, &ComplexPoint::real(&[0.3, 0.5])).unwrap();
        assert!((w[0] - c(0.6, 0.0)).norm() < 1e-15);
        assert!((w[1] - c(0.5, 0.0)).norm() < 1e-15);

        let z = map_g(3, 1, &ComplexPoint::real(&[0.2, 0.5, 0.5])).unwrap();
        let want = [0.05, 0.25, 0.5];
        for (a, b) in z.iter().zip(want) {
            assert!((a - c(b, 0.0)).norm() < 1e-15);
        }
        assert!(matches!(
            map_f(2, 1, &ComplexPoint::real(&[0.3, 0.0])),
            Err(Error::ZeroCoordinate { index: 1 })
        ));
    }

    #[test]
    fn jacobian_examples() {
        let one = ComplexPoint::real(&[1.0, 1.0, 1.0]);
        assert_eq!(jacobian_det_g(3, 1, &one).unwrap(), c(1.0, 0.0));
        assert_eq!(jacobian_det_g(2, 1, &ComplexPoint::real(&[0.1, 0.5])).unwrap(), c(0.5, 0.0));
        let d = jacobian_det_g(3, 1, &ComplexPoint::real(&[0.1, 0.5, 0.5])).unwrap();
        assert!((d - c(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn phi_examples() {
        let ex = HartogsDomainSpec::affine_example();
        let z = ComplexPoint::real(&[0.75, 0.1, 0.2, 0.9]);
        let w = map_phi(&ex, &z).unwrap();
        assert!((w[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((w[1] - c(0.2, 0.0)).norm() < 1e-15);
        assert_eq!(w[3], z[3]);

        let id = HartogsDomainSpec::triangle(3, 1).unwrap();
        let z = ComplexPoint::new(vec![c(0.1, 0.2), c(0.3, -0.1), c(0.0, 0.8)]).unwrap();
        assert_eq!(map_phi(&id, &z).unwrap(), z);

        let rat = HartogsDomainSpec::rational_example();
        assert!(matches!(
            map_phi(&rat, &ComplexPoint::real(&[0.0, 10.0, 0.5])),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn spec_json_schema() {
        let json = r#"{"n":4,"blocks":[
            {"k":1,"map":{"type":"affine","A":[[[2,0]]],"b":[[-1,0]]}},
            {"k":2,"map":{"type":"affine","A":[[[1,0],[0.5,0]],[[0,0],[1,0]]],"b":[[0,0],[0,0]]}}]}"#;
        let spec: HartogsDomainSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, HartogsDomainSpec::affine_example());
        let s = serde_json::to_string(&HartogsDomainSpec::rational_example()).unwrap();
        assert_eq!(s, r#"{"n":3,"blocks":[{"k":2,"map":{"type":"rational_example"}}]}"#);
        let id: HartogsDomainSpec =
            serde_json::from_str(r#"{"n":2,"blocks":[{"k":1,"map":{"type":"identity"}}]}"#).unwrap();
        assert_eq!(id, HartogsDomainSpec::triangle(2, 1).unwrap());
        assert!(serde_json::from_str::<HartogsDomainSpec>(
            r#"{"n":1,"blocks":[{"k":1,"map":{"type":"identity"}}]}"#
        )
        .is_err());
    }

    #[test]
    fn non_finite_points_are_rejected() {
        assert!(ComplexPoint::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexPoint::from_interleaved(&[1.0, 2.0, 3.0]).is_err());
    }
}
