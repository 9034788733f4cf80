use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::special::ln_factorial;

/// A multi-index `ν = (ν₁, …, ν_k)` of non-negative integers.
///
/// Doubles as the exponent vector of the monomial `z^ν = ∏ z_i^{ν_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// `|ν| = Σ ν_i`.
    pub fn order(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// `ln ν! = Σ ln(ν_i!)`.
    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&c| ln_factorial(c as u64)).sum()
    }

    /// `ν! = ∏ ν_i!`.
    pub fn factorial(&self) -> f64 {
        self.ln_factorial().exp()
    }

    /// Evaluates `z^ν` by repeated multiplication.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.0.len());
        self.0
            .iter()
            .zip(z)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, &zi)| acc * zi.powu(e))
    }

    /// All multi-indices of dimension `dim` with `|ν| = degree`, in
    /// lexicographic order.
    pub fn of_degree(dim: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; dim];
        fill(&mut out, &mut current, 0, degree);
        out
    }

    /// All multi-indices of dimension `dim` with `|ν| ≤ max_degree`, ordered
    /// by total degree and lexicographically within one degree.
    pub fn up_to_degree(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .flat_map(|d| Self::of_degree(dim, d))
            .collect()
    }
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for c in 0..=remaining {
        current[pos] = c;
        fill(out, current, pos + 1, remaining - c);
    }
    current[pos] = 0;
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = String;

    /// Parses a comma-separated list such as `1,0,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}
