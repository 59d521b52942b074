//! Chain to spectrum: hermitize, remove the gauge phases, diagonalize.

use crate::eigensolver::{decompose, Mode, Spectrum};
use crate::error::Result;
use crate::lattice::{build_chain, HoppingProfile, PtChain};
use crate::scalar::Real;
use crate::transform::{gauge_reduce, hermitize, GaugeReduced, HermitianChain};

#[derive(Clone, Debug)]
pub struct ChainSolution<T> {
    pub hermitian: HermitianChain<T>,
    pub reduced: GaugeReduced<T>,
    /// Spectrum of the real gauge-reduced matrix. Its eigenvectors have the
    /// same moduli as those of the Hermitian counterpart.
    pub spectrum: Spectrum<T>,
}

pub fn solve_chain<T: Real>(chain: &PtChain<T>, mode: Mode, phase_tol: T) -> Result<ChainSolution<T>> {
    let hermitian = hermitize(chain, phase_tol)?;
    let reduced = gauge_reduce(&hermitian);
    let spectrum = decompose(&reduced.matrix, mode)?;
    Ok(ChainSolution {
        hermitian,
        reduced,
        spectrum,
    })
}

/// `t_k = t0 k^alpha` on `n_sites` sites, solved end to end.
pub fn solve_power_law<T: Real>(t0: T, alpha: T, n_sites: usize, mode: Mode) -> Result<ChainSolution<T>> {
    let chain = build_chain(&HoppingProfile::PowerLaw { t0, alpha }, n_sites)?;
    solve_chain(&chain, mode, T::lit(crate::lattice::DEFAULT_PHASE_TOL))
}
