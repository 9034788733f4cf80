//! Bergman kernels, integral estimates, Schur-test windows and endpoint
//! counterexamples for generalized Hartogs triangles
//! `ℍⁿ_{k_j,φ_j} = {max_j |φ_j(z̃_j)| < |z_{k+1}| < … < |z_n| < 1}`.

pub mod cli;
pub mod config;
pub mod counterexample;
pub mod domains;
pub mod error;
pub mod estimates;
pub mod kernels;
pub mod mc;
pub mod multi_index;
pub mod output;
pub mod schur;
pub mod special;
pub mod transfer;

pub use config::{NumericConfig, SeriesConfig};
pub use domains::{ComplexPoint, HartogsDomainSpec, MapFamily};
pub use error::{Error, Result};
pub use multi_index::MultiIndex;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/domains.md")]
    mod domains {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/estimates.md")]
    mod estimates {}
    #[doc = include_str!("../../../book/src/schur.md")]
    mod schur {}
    #[doc = include_str!("../../../book/src/counterexample.md")]
    mod counterexample {}
    #[doc = include_str!("../../../book/src/transfer.md")]
    mod transfer {}
    #[doc = include_str!("../../../book/src/reproducibility.md")]
    mod reproducibility {}
}
