use serde::{Deserialize, Serialize};

/// Default RNG seed used when neither a flag nor the environment supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_2013;

/// Truncation policy for the exact kernel-integral series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Stop once the geometric tail bound of the remaining terms falls below
    /// `tolerance` times the partial sum.
    pub tolerance: f64,
    /// Hard cap on the number of terms; hitting it is reported as
    /// non-convergence.
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_terms: 1_000_000,
        }
    }
}

/// Shared numeric knobs: seeds, Monte-Carlo sample counts, series policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub seed: u64,
    pub mc_samples: usize,
    pub series: SeriesConfig,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            mc_samples: 1_000_000,
            series: SeriesConfig::default(),
        }
    }
}

impl NumericConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.mc_samples = samples;
        self
    }
}
