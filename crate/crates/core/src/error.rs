use thiserror::Error;

use crate::lattice::RealityCriterionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a chain needs at least 2 sites, got {0}")]
    TooFewSites(usize),

    #[error("expected {expected} values, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("hopping amplitude t_{0} is zero")]
    ZeroAmplitude(usize),

    #[error("hopping amplitude t_{0} is not finite")]
    NonFiniteAmplitude(usize),

    #[error("energy scale t0 must be positive and finite, got {0}")]
    InvalidEnergyScale(f64),

    #[error("exponent alpha must be finite, got {0}")]
    InvalidExponent(f64),

    #[error(
        "reality criterion violated at bond k = {}: phase mismatch {:.3e} rad",
        .0.first_violation.unwrap_or(0),
        .0.first_violation.map(|k| .0.phase_mismatch[k - 1]).unwrap_or(0.0)
    )]
    CriterionViolated(RealityCriterionReport<f64>),

    #[error("similarity scale endpoint log m_N = {0:.3e} exceeds tolerance")]
    EndpointInconsistent(f64),

    #[error("{what} is limited to N <= {limit}, got N = {actual}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("eigenvalue {index} did not converge after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("root iteration did not converge after {iterations} iterations (last update {last_update:.3e})")]
    RootsNoConvergence {
        iterations: usize,
        last_update: f64,
        best: Vec<num_complex::Complex<f64>>,
    },

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("spectrum was computed without eigenvectors")]
    MissingVectors,

    #[error("input sequence is empty")]
    Empty,

    #[error("bin count must be at least 1")]
    InvalidBins,

    #[error("{0}")]
    InvalidSizes(String),

    #[error("hopping file: {0}")]
    HoppingFile(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
