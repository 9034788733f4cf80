//! Deterministic Monte-Carlo machinery.
//!
//! Samples are grouped into fixed-size chunks; chunk `c` draws from a
//! ChaCha8 stream selected by `(seed, c)`, so the pair `(seed, index)` fixes
//! every sample no matter how many worker threads run. Partial moments are
//! merged in chunk order, which makes the reduction bit-for-bit reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Number of consecutive samples that share one RNG stream.
pub const CHUNK: usize = 4096;

pub type SampleRng = ChaCha8Rng;

/// Relative difference treated as floating-point noise by z-scores.
const ROUNDING: f64 = 1e-12;

/// RNG for chunk `chunk` of the stream family selected by `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    /// `(mean − reference) / std_error`; a zero-variance estimate that
    /// matches to rounding scores zero.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if diff.abs() <= ROUNDING * reference.abs().max(self.mean.abs()) {
            0.0
        } else {
            diff / self.std_error
        }
    }

    pub fn within_sigma(&self, reference: f64, sigmas: f64) -> bool {
        self.z_score(reference).abs() <= sigmas
    }

    /// Scales mean and error by a positive constant.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            mean: self.mean * factor,
            std_error: self.std_error * factor.abs(),
            samples: self.samples,
        }
    }

    /// z-score of the difference of two independent estimates.
    pub fn z_score_against(&self, other: &Estimate) -> f64 {
        let diff = self.mean - other.mean;
        if diff.abs() <= ROUNDING * self.mean.abs().max(other.mean.abs()) {
            return 0.0;
        }
        diff / (self.std_error.powi(2) + other.std_error.powi(2)).sqrt()
    }
}

/// Real and imaginary estimates of a complex mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEstimate {
    pub re: Estimate,
    pub im: Estimate,
}

impl ComplexEstimate {
    pub fn mean(&self) -> Complex64 {
        Complex64::new(self.re.mean, self.im.mean)
    }

    pub fn within_sigma(&self, reference: Complex64, sigmas: f64) -> bool {
        self.re.within_sigma(reference.re, sigmas) && self.im.within_sigma(reference.im, sigmas)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }

    fn finish(self) -> Estimate {
        let var = if self.n > 1 {
            self.m2 / (self.n - 1) as f64
        } else {
            0.0
        };
        Estimate {
            mean: self.mean,
            std_error: (var / self.n.max(1) as f64).sqrt(),
            samples: self.n,
        }
    }
}

fn chunk_len(total: usize, chunk: usize) -> usize {
    CHUNK.min(total - chunk * CHUNK)
}

/// Averages `D` real-valued statistics over `samples` draws.
///
/// `f` is called once per sample with the chunk-local RNG positioned at that
/// sample's draws.
pub fn estimate<const D: usize, F>(seed: u64, samples: usize, f: F) -> [Estimate; D]
where
    F: Fn(&mut SampleRng) -> [f64; D] + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<[Moments; D]> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let mut acc = [Moments::default(); D];
            for _ in 0..chunk_len(samples, c) {
                let v = f(&mut rng);
                for (a, x) in acc.iter_mut().zip(v) {
                    a.push(x);
                }
            }
            acc
        })
        .collect();
    let total = partial
        .into_iter()
        .fold([Moments::default(); D], |mut acc, part| {
            for (a, p) in acc.iter_mut().zip(part) {
                *a = a.merge(p);
            }
            acc
        });
    total.map(Moments::finish)
}

/// Single-statistic convenience wrapper around [`estimate`].
pub fn estimate_mean<F>(seed: u64, samples: usize, f: F) -> Estimate
where
    F: Fn(&mut SampleRng) -> f64 + Sync,
{
    let [e] = estimate(seed, samples, |rng| [f(rng)]);
    e
}

/// Complex mean of `f` over `samples` draws.
pub fn estimate_complex<F>(seed: u64, samples: usize, f: F) -> ComplexEstimate
where
    F: Fn(&mut SampleRng) -> Complex64 + Sync,
{
    let [re, im] = estimate(seed, samples, |rng| {
        let v = f(rng);
        [v.re, v.im]
    });
    ComplexEstimate { re, im }
}

/// Generates `count` values in index order using the chunked stream layout.
pub fn generate<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut SampleRng) -> T + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            (0..chunk_len(count, c)).map(|_| f(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Uniform point on the unit sphere of `ℂ^k` (normalized Gaussian vector).
pub fn unit_sphere<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..k)
            .map(|_| {
                Complex64::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// Uniform point of the unit ball of `ℂ^k`: radius `u^{1/(2k)}` times a sphere point.
pub fn unit_ball<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Complex64> {
    let u: f64 = 1.0 - rng.random::<f64>();
    let r = u.powf(0.5 / k as f64);
    unit_sphere(rng, k).into_iter().map(|c| c * r).collect()
}

/// Uniform point of the unit disk, never exactly zero.
pub fn unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u: f64 = 1.0 - rng.random::<f64>();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(u.sqrt(), theta)
}

/// Uniform phase `e^{iθ}`.
pub fn unit_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>())
}
