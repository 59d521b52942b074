//! Spectral analysis of PT-symmetric tight-binding chains with
//! position-dependent, non-Hermitian hopping.
//!
//! A chain is built from its bond amplitudes ([`lattice`]), checked against the
//! reality criterion and mapped to its Hermitian counterpart by a diagonal
//! similarity transform ([`transform`]), then diagonalized as a real symmetric
//! tridiagonal matrix ([`eigensolver`]). [`analysis`] turns spectra into
//! densities of states, inverse participation ratios and scaling fits, and
//! [`oracles`] holds the closed forms everything is checked against.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the double-precision types used by the CLI.

pub mod analysis;
pub mod dense;
pub mod eigensolver;
pub mod error;
pub mod lattice;
pub mod oracles;
pub mod pipeline;
pub mod scalar;
pub mod transform;

pub use eigensolver::Mode;
pub use error::{Error, Result};
pub use pipeline::{solve_chain, solve_power_law};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type PtChain64 = lattice::PtChain<f64>;
pub type HoppingProfile64 = lattice::HoppingProfile<f64>;
pub type HermitianChain64 = transform::HermitianChain<f64>;
pub type SimilarityScale64 = transform::SimilarityScale<f64>;
pub type SymTridiag64 = eigensolver::SymTridiag<f64>;
pub type Spectrum64 = eigensolver::Spectrum<f64>;
pub type IprReport64 = analysis::IprReport<f64>;
pub type Histogram64 = analysis::Histogram<f64>;
pub type ScalingFit64 = analysis::ScalingFit<f64>;
