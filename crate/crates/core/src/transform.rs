//! Diagonal similarity transform to the Hermitian counterpart.
//!
//! When every reflected bond pair has matching phases, `M = diag(m_k)` with
//! `m_1 = 1` and `m_{k+1} = m_k sqrt(|t_{N-k}| / |t_k|)` turns `H_PT` into a
//! Hermitian tridiagonal `H = M^-1 H_PT M` with off-diagonal moduli
//! `|t_k t_{N-k}|^(1/2)`. For power-law hopping `m_k` grows like a square-rooted
//! binomial coefficient, so `M` is kept as `ln m_k` and PT-picture vectors are
//! only ever produced in log-polar form.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::eigensolver::SymTridiag;
use crate::error::{Error, Result};
use crate::lattice::PtChain;
use crate::scalar::Real;

/// Dense cross-checks are only attempted up to this many sites.
pub const DENSE_CHECK_LIMIT: usize = 64;

/// Tolerance on `|ln m_N|`, which must vanish since `m_N = m_1 = 1`.
pub fn endpoint_tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::lit(1e5) * T::epsilon())
}

/// `ln m_k` for the real, positive similarity transform with `m_1 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityScale<T> {
    log_m: Vec<T>,
}

/// Hermitian counterpart: `H_{k,k+1} = -off_mag[k] e^{i off_phase[k]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermitianChain<T> {
    off_mag: Vec<T>,
    off_phase: Vec<T>,
}

/// Diagonal metric `eta = (M M^dagger)^-1 = M^-2`, stored as logarithms.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<T> {
    pub log_eta_diag: Vec<T>,
}

/// Real symmetric form of a [`HermitianChain`] together with the site phases
/// that undo the gauge.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeReduced<T> {
    pub matrix: SymTridiag<T>,
    /// `phi_1 = 0`, `phi_{k+1} = phi_k - theta_k`.
    pub gauge_phases: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `u = M v`.
    ToPt,
    /// `v = M^-1 u`.
    ToHermitian,
}

/// A complex number as `exp(log_mag + i phase)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogPolar<T> {
    pub log_mag: T,
    pub phase: T,
}

impl<T: Real> LogPolar<T> {
    pub fn from_complex(z: Complex<T>) -> Self {
        Self {
            log_mag: z.norm().ln(),
            phase: z.arg(),
        }
    }

    /// Overflows or underflows when `log_mag` is out of range.
    pub fn to_complex(self) -> Complex<T> {
        Complex::from_polar(self.log_mag.exp(), self.phase)
    }
}

fn require_criterion<T: Real>(chain: &PtChain<T>, phase_tol: T) -> Result<()> {
    let report = chain.reality_criterion(phase_tol);
    if report.satisfied {
        Ok(())
    } else {
        Err(Error::CriterionViolated(report.to_f64()))
    }
}

/// Builds `ln m_k` from the bond-ratio recurrence.
pub fn build_similarity<T: Real>(chain: &PtChain<T>, phase_tol: T) -> Result<SimilarityScale<T>> {
    require_criterion(chain, phase_tol)?;
    let n = chain.n_sites();
    let half = T::lit(0.5);
    let log_abs: Vec<T> = chain.hopping().iter().map(|t| t.norm().ln()).collect();
    let mut log_m = Vec::with_capacity(n);
    log_m.push(T::zero());
    let mut acc = T::zero();
    for k in 1..n {
        // Reflected bonds contribute exactly opposite increments.
        let step = if k <= n - k {
            half * (log_abs[n - k - 1] - log_abs[k - 1])
        } else {
            -(half * (log_abs[k - 1] - log_abs[n - k - 1]))
        };
        acc = acc + step;
        log_m.push(acc);
    }
    let end = log_m[n - 1];
    if end.abs() > endpoint_tolerance::<T>() {
        return Err(Error::EndpointInconsistent(end.as_f64()));
    }
    Ok(SimilarityScale { log_m })
}

impl<T: Real> SimilarityScale<T> {
    pub fn log_m(&self) -> &[T] {
        &self.log_m
    }

    pub fn n_sites(&self) -> usize {
        self.log_m.len()
    }

    pub fn metric(&self) -> Metric<T> {
        Metric {
            log_eta_diag: self.log_m.iter().map(|&l| -(l + l)).collect(),
        }
    }

    /// `m_k` in plain arithmetic. Only meaningful while every entry is representable.
    pub fn m(&self) -> Vec<T> {
        self.log_m.iter().map(|l| l.exp()).collect()
    }
}

/// Hermitian counterpart with moduli `|t_k t_{N-k}|^(1/2)` and phases `arg t_k`.
pub fn hermitize<T: Real>(chain: &PtChain<T>, phase_tol: T) -> Result<HermitianChain<T>> {
    require_criterion(chain, phase_tol)?;
    let n = chain.n_sites();
    let root_abs: Vec<T> = chain.hopping().iter().map(|t| t.norm().sqrt()).collect();
    let off_mag = (1..n).map(|k| root_abs[k - 1] * root_abs[n - k - 1]).collect();
    let off_phase = chain.hopping().iter().map(|t| t.arg()).collect();
    Ok(HermitianChain { off_mag, off_phase })
}

impl<T: Real> HermitianChain<T> {
    /// Builds a counterpart directly from moduli and phases (one per bond).
    pub fn new(off_mag: Vec<T>, off_phase: Vec<T>) -> Result<Self> {
        if off_mag.is_empty() {
            return Err(Error::TooFewSites(1));
        }
        if off_mag.len() != off_phase.len() {
            return Err(Error::SizeMismatch {
                expected: off_mag.len(),
                actual: off_phase.len(),
            });
        }
        Ok(Self { off_mag, off_phase })
    }

    pub fn n_sites(&self) -> usize {
        self.off_mag.len() + 1
    }

    pub fn off_mag(&self) -> &[T] {
        &self.off_mag
    }

    pub fn off_phase(&self) -> &[T] {
        &self.off_phase
    }

    pub fn elements(&self) -> crate::lattice::TridiagElements<T> {
        let upper: Vec<Complex<T>> = self
            .off_mag
            .iter()
            .zip(&self.off_phase)
            .map(|(&r, &theta)| -Complex::from_polar(r, theta))
            .collect();
        crate::lattice::TridiagElements {
            diag: vec![Complex::new(T::zero(), T::zero()); self.n_sites()],
            subdiag: upper.iter().map(|z| z.conj()).collect(),
            superdiag: upper,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_tridiag(&self.elements())
    }
}

/// Removes the bond phases with a diagonal unitary gauge.
///
/// If `w` is an eigenvector of the returned real matrix, `v_k = e^{i phi_k} w_k`
/// is an eigenvector of `h` with the same eigenvalue.
pub fn gauge_reduce<T: Real>(h: &HermitianChain<T>) -> GaugeReduced<T> {
    let n = h.n_sites();
    let mut gauge_phases = Vec::with_capacity(n);
    gauge_phases.push(T::zero());
    for theta in &h.off_phase {
        let last = *gauge_phases.last().unwrap();
        gauge_phases.push(last - *theta);
    }
    let offdiag = h.off_mag.iter().map(|&r| -r).collect();
    GaugeReduced {
        matrix: SymTridiag::new(vec![T::zero(); n], offdiag).expect("consistent lengths"),
        gauge_phases,
    }
}

impl<T: Real> GaugeReduced<T> {
    /// Eigenvector of the phased Hermitian matrix from one of the real matrix.
    pub fn restore_phases(&self, w: &[T]) -> Vec<Complex<T>> {
        w.iter()
            .zip(&self.gauge_phases)
            .map(|(&x, &phi)| Complex::from_polar(T::one(), phi) * x)
            .collect()
    }
}

/// Maps an eigenvector between the Hermitian and PT pictures, in log-polar form.
pub fn map_eigenvector<T: Real>(
    scale: &SimilarityScale<T>,
    v: &[Complex<T>],
    direction: Direction,
) -> Result<Vec<LogPolar<T>>> {
    let polar: Vec<LogPolar<T>> = v.iter().map(|&z| LogPolar::from_complex(z)).collect();
    map_log_polar(scale, &polar, direction)
}

/// Same as [`map_eigenvector`] for input already in log-polar form.
pub fn map_log_polar<T: Real>(
    scale: &SimilarityScale<T>,
    v: &[LogPolar<T>],
    direction: Direction,
) -> Result<Vec<LogPolar<T>>> {
    if v.len() != scale.n_sites() {
        return Err(Error::SizeMismatch {
            expected: scale.n_sites(),
            actual: v.len(),
        });
    }
    Ok(v.iter()
        .zip(&scale.log_m)
        .map(|(z, &l)| LogPolar {
            log_mag: match direction {
                Direction::ToPt => z.log_mag + l,
                Direction::ToHermitian => z.log_mag - l,
            },
            phase: z.phase,
        })
        .collect())
}

fn check_dense_size(what: &'static str, n: usize) -> Result<()> {
    if n > DENSE_CHECK_LIMIT {
        return Err(Error::SizeLimit {
            what,
            limit: DENSE_CHECK_LIMIT,
            actual: n,
        });
    }
    Ok(())
}

/// Dense `M^-1 H_PT M`.
pub fn similarity_transform_dense<T: Real>(
    chain: &PtChain<T>,
    scale: &SimilarityScale<T>,
) -> Result<DenseMatrix<T>> {
    check_dense_size("dense similarity transform", chain.n_sites())?;
    let h_pt = DenseMatrix::from_tridiag(&chain.pt_elements());
    let m: Vec<Complex<T>> = scale.m().into_iter().map(|x| Complex::new(x, T::zero())).collect();
    let m_inv: Vec<Complex<T>> = m.iter().map(|x| x.inv()).collect();
    Ok(h_pt.scale_rows_cols(&m_inv, &m))
}

/// Checks `eta H_PT eta^-1 = H_PT^dagger` with `eta = M^-2`, entrywise within
/// `tol` times the largest entry of `H_PT`.
pub fn metric_check<T: Real>(chain: &PtChain<T>, scale: &SimilarityScale<T>, tol: T) -> Result<bool> {
    check_dense_size("metric check", chain.n_sites())?;
    if scale.n_sites() != chain.n_sites() {
        return Err(Error::SizeMismatch {
            expected: chain.n_sites(),
            actual: scale.n_sites(),
        });
    }
    let h_pt = DenseMatrix::from_tridiag(&chain.pt_elements());
    let eta: Vec<Complex<T>> = scale
        .metric()
        .log_eta_diag
        .iter()
        .map(|l| Complex::new(l.exp(), T::zero()))
        .collect();
    let eta_inv: Vec<Complex<T>> = eta.iter().map(|x| x.inv()).collect();
    let lhs = h_pt.scale_rows_cols(&eta, &eta_inv);
    Ok(lhs.max_abs_diff(&h_pt.adjoint()) <= tol * h_pt.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_chain, HoppingProfile};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn power_law(alpha: f64, n: usize) -> PtChain<f64> {
        build_chain(&HoppingProfile::PowerLaw { t0: 1.0, alpha }, n).unwrap()
    }

    #[test]
    fn similarity_for_linear_hopping() {
        let scale = build_similarity(&power_law(1.0, 5), TOL).unwrap();
        let expected = [0.0, 2f64.ln(), 0.5 * 6f64.ln(), 2f64.ln(), 0.0];
        for (a, b) in scale.log_m().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
        let m = scale.m();
        assert!((m[2] - 6f64.sqrt()).abs() < 1e-14);
        assert!(scale.log_m()[4].abs() < 1e-15);
    }

    #[test]
    fn similarity_uniform_and_violation() {
        let scale = build_similarity(&power_law(0.0, 3), TOL).unwrap();
        assert_eq!(scale.log_m(), &[0.0, 0.0, 0.0]);

        let broken = PtChain::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(-4.0, 0.0)]).unwrap();
        match build_similarity(&broken, TOL) {
            Err(Error::CriterionViolated(report)) => assert_eq!(report.first_violation, Some(1)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(hermitize(&broken, TOL), Err(Error::CriterionViolated(_))));
    }

    #[test]
    fn endpoint_stays_zero_for_large_chains() {
        for alpha in [-1.0, 1.0, 2.0] {
            let scale = build_similarity(&power_law(alpha, 5000), TOL).unwrap();
            assert!(scale.log_m()[4999].abs() <= 1e-10);
        }
        // ln m_k for alpha = 1 is half a log-binomial; m itself would overflow.
        let scale = build_similarity(&power_law(1.0, 3000), TOL).unwrap();
        assert!(scale.log_m()[1500] > 709.0);
    }

    #[test]
    fn hermitize_cases() {
        let h = hermitize(&power_law(1.0, 5), TOL).unwrap();
        let s6 = 6f64.sqrt();
        for (a, b) in h.off_mag().iter().zip([2.0, s6, s6, 2.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(h.off_phase().iter().all(|&p| p == 0.0));

        let h = hermitize(&PtChain::new(vec![c(0.0, 1.0), c(0.0, 2.0)]).unwrap(), TOL).unwrap();
        let r2 = 2f64.sqrt();
        for (a, b) in h.off_mag().iter().zip([r2, r2]) {
            assert!((a - b).abs() < 1e-15);
        }
        for p in h.off_phase() {
            assert!((p - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        }

        let h = hermitize(&PtChain::new(vec![c(3.0, 0.0)]).unwrap(), TOL).unwrap();
        assert!((h.off_mag()[0] - 3.0).abs() < 1e-15);
        assert_eq!(h.off_phase(), &[0.0]);
    }

    #[test]
    fn power_law_moduli_are_reflection_symmetric() {
        let n = 37;
        let alpha = 1.3;
        let h = hermitize(&power_law(alpha, n), TOL).unwrap();
        for k in 1..n {
            assert_eq!(h.off_mag()[k - 1], h.off_mag()[n - k - 1]);
            let expected = ((k * (n - k)) as f64).powf(alpha / 2.0);
            assert!((h.off_mag()[k - 1] - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn gauge_phases() {
        let h = hermitize(&power_law(1.0, 4), TOL).unwrap();
        let g = gauge_reduce(&h);
        assert!(g.gauge_phases.iter().all(|&p| p == 0.0));
        for (a, b) in g.matrix.offdiag().iter().zip([-3f64.sqrt(), -2.0, -3f64.sqrt()]) {
            assert!((a - b).abs() < 1e-15);
        }

        let h = HermitianChain::new(vec![1.0, 1.0], vec![std::f64::consts::FRAC_PI_2; 2]).unwrap();
        let g = gauge_reduce(&h);
        let expected = [0.0, -std::f64::consts::FRAC_PI_2, -std::f64::consts::PI];
        for (a, b) in g.gauge_phases.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn restored_phases_give_eigenvectors_of_phased_matrix() {
        let h = HermitianChain::new(vec![1.0, 2.0, 0.5], vec![0.3, -1.1, 2.0]).unwrap();
        let g = gauge_reduce(&h);
        let spectrum = crate::eigensolver::decompose(&g.matrix, crate::eigensolver::Mode::Full).unwrap();
        let dense = h.to_dense();
        for (n, &e) in spectrum.values.iter().enumerate() {
            let v = g.restore_phases(spectrum.vector(n).unwrap());
            let hv = dense.matvec(&v);
            let err = hv.iter().zip(&v).map(|(a, b)| (a - b * e).norm()).fold(0.0, f64::max);
            assert!(err < 1e-14, "state {n}: {err}");
        }
    }

    #[test]
    fn map_eigenvector_to_binomial() {
        let scale = build_similarity(&power_law(1.0, 5), TOL).unwrap();
        let v: Vec<_> = [1.0, 2.0, 6f64.sqrt(), 2.0, 1.0].iter().map(|&x| c(x / 4.0, 0.0)).collect();
        let u = map_eigenvector(&scale, &v, Direction::ToPt).unwrap();
        for (z, b) in u.iter().zip([1.0, 4.0, 6.0, 4.0, 1.0]) {
            assert!((z.to_complex().re - b / 4.0).abs() < 1e-14);
            assert_eq!(z.phase, 0.0);
        }
        let back = map_log_polar(&scale, &u, Direction::ToHermitian).unwrap();
        for (a, b) in back.iter().zip(&v) {
            assert!((a.log_mag - b.norm().ln()).abs() < 1e-13);
        }

        let uniform = build_similarity(&power_law(0.0, 3), TOL).unwrap();
        let v = vec![c(0.5, -0.5), c(1.0, 0.0), c(-2.0, 0.0)];
        let u = map_eigenvector(&uniform, &v, Direction::ToPt).unwrap();
        for (a, b) in u.iter().zip(&v) {
            assert!((a.to_complex() - b).norm() < 1e-15);
        }
        assert!(matches!(
            map_eigenvector(&uniform, &v[..2], Direction::ToPt),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn metric_three_sites() {
        let chain = PtChain::new(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let scale = build_similarity(&chain, TOL).unwrap();
        let eta: Vec<f64> = scale.metric().log_eta_diag.iter().map(|l| l.exp()).collect();
        for (a, b) in eta.iter().zip([1.0, 0.5, 1.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(metric_check(&chain, &scale, 1e-12).unwrap());

        let uniform = power_law(0.0, 6);
        let scale = build_similarity(&uniform, TOL).unwrap();
        assert!(metric_check(&uniform, &scale, 0.0).unwrap());

        let big = power_law(1.0, 65);
        let scale = build_similarity(&big, TOL).unwrap();
        assert!(matches!(metric_check(&big, &scale, 1e-12), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn dense_similarity_matches_hermitian_counterpart() {
        let chain = PtChain::new(vec![c(0.0, 1.0), c(2.0, 1.0), c(1.0, 0.5), c(0.0, 3.0)]).unwrap();
        let scale = build_similarity(&chain, TOL).unwrap();
        let h = hermitize(&chain, TOL).unwrap();
        let transformed = similarity_transform_dense(&chain, &scale).unwrap();
        let max = h.off_mag().iter().cloned().fold(0.0, f64::max);
        assert!(transformed.max_abs_diff(&h.to_dense()) <= 1e-12 * max);
        assert!(transformed.max_abs_diff(&transformed.adjoint()) <= 1e-12 * max);
    }
}
