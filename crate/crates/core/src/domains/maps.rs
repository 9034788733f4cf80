use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Affine biholomorphism `φ(z) = A z + b` with nonsingular `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    matrix: DMatrix<Complex64>,
    shift: DVector<Complex64>,
    inverse: DMatrix<Complex64>,
    det: Complex64,
}

impl AffineMap {
    pub fn new(matrix: DMatrix<Complex64>, shift: DVector<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(Error::InvalidSpec(format!(
                "affine matrix must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if shift.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: shift.len(),
            });
        }
        if matrix.iter().chain(shift.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("affine map has non-finite entries".into()));
        }
        let det = matrix.determinant();
        if !(det.norm() > 0.0) {
            return Err(Error::InvalidSpec("affine matrix is singular".into()));
        }
        let inverse = matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidSpec("affine matrix is singular".into()))?;
        Ok(Self {
            matrix,
            shift,
            inverse,
            det,
        })
    }

    /// Builds the map from row-major entries.
    pub fn from_rows(rows: &[Vec<Complex64>], shift: &[Complex64]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidSpec("affine matrix must be square".into()));
        }
        let matrix = DMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
        Self::new(matrix, DVector::from_column_slice(shift))
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn shift(&self) -> &DVector<Complex64> {
        &self.shift
    }

    pub fn inverse_matrix(&self) -> &DMatrix<Complex64> {
        &self.inverse
    }

    pub fn det(&self) -> Complex64 {
        self.det
    }

    fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        let v = &self.matrix * DVector::from_column_slice(z) + &self.shift;
        v.iter().copied().collect()
    }

    fn apply_inverse(&self, w: &[Complex64]) -> Vec<Complex64> {
        let v = &self.inverse * (DVector::from_column_slice(w) - &self.shift);
        v.iter().copied().collect()
    }
}

/// A concrete biholomorphism `φ_j : Ω_j → 𝔹^{k_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub enum MapFamily {
    Identity,
    Affine(AffineMap),
    /// `(z₁, z₂) ↦ (z₁ / (z₂ − 10), 3 z₂ + 1)` on `ℂ²`.
    RationalExample,
}

const POLE: f64 = 10.0;

impl MapFamily {
    /// Dimension the map is pinned to, if any.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            MapFamily::Identity => None,
            MapFamily::Affine(a) => Some(a.dim()),
            MapFamily::RationalExample => Some(2),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, MapFamily::Identity)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        match self.fixed_dim() {
            Some(d) if d != len => Err(Error::DimensionMismatch {
                expected: d,
                actual: len,
            }),
            _ => Ok(()),
        }
    }

    pub fn value(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(z.len())?;
        match self {
            MapFamily::Identity => Ok(z.to_vec()),
            MapFamily::Affine(a) => Ok(a.apply(z)),
            MapFamily::RationalExample => {
                let denom = z[1] - POLE;
                if denom.norm() == 0.0 {
                    return Err(Error::Pole("z₂ = 10 in the rational example".into()));
                }
                Ok(vec![z[0] / denom, 3.0 * z[1] + 1.0])
            }
        }
    }

    pub fn inverse(&self, w: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(w.len())?;
        match self {
            MapFamily::Identity => Ok(w.to_vec()),
            MapFamily::Affine(a) => Ok(a.apply_inverse(w)),
            MapFamily::RationalExample => {
                let z2 = (w[1] - 1.0) / 3.0;
                Ok(vec![w[0] * (z2 - POLE), z2])
            }
        }
    }

    /// Complex Jacobian determinant of the map at `z`.
    pub fn jacobian_det(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_dim(z.len())?;
        match self {
            MapFamily::Identity => Ok(Complex64::new(1.0, 0.0)),
            MapFamily::Affine(a) => Ok(a.det()),
            MapFamily::RationalExample => {
                // J = [[1/(z₂−10), −z₁/(z₂−10)²], [0, 3]]
                let denom = z[1] - POLE;
                if denom.norm() == 0.0 {
                    return Err(Error::Pole("z₂ = 10 in the rational example".into()));
                }
                Ok(3.0 / denom)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum MapRepr {
    Identity,
    Affine {
        #[serde(rename = "A")]
        a: Vec<Vec<[f64; 2]>>,
        b: Vec<[f64; 2]>,
    },
    RationalExample,
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl TryFrom<MapRepr> for MapFamily {
    type Error = Error;

    fn try_from(repr: MapRepr) -> Result<Self> {
        Ok(match repr {
            MapRepr::Identity => MapFamily::Identity,
            MapRepr::RationalExample => MapFamily::RationalExample,
            MapRepr::Affine { a, b } => {
                let rows: Vec<Vec<Complex64>> =
                    a.into_iter().map(|r| r.into_iter().map(c).collect()).collect();
                let shift: Vec<Complex64> = b.into_iter().map(c).collect();
                MapFamily::Affine(AffineMap::from_rows(&rows, &shift)?)
            }
        })
    }
}

impl From<MapFamily> for MapRepr {
    fn from(m: MapFamily) -> Self {
        match m {
            MapFamily::Identity => MapRepr::Identity,
            MapFamily::RationalExample => MapRepr::RationalExample,
            MapFamily::Affine(a) => {
                let d = a.dim();
                MapRepr::Affine {
                    a: (0..d)
                        .map(|i| (0..d).map(|j| [a.matrix[(i, j)].re, a.matrix[(i, j)].im]).collect())
                        .collect(),
                    b: a.shift.iter().map(|s| [s.re, s.im]).collect(),
                }
            }
        }
    }
}
