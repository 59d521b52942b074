//! PT-symmetric tight-binding chains with position-dependent hopping.
//!
//! A chain of `N` sites is described by the bond amplitudes `t_1 .. t_{N-1}`.
//! Its Hamiltonian is tridiagonal with zero diagonal, superdiagonal
//! `(k, k+1) = -t_k` and subdiagonal `(k+1, k) = -conj(t_{N-k})`. Under this
//! convention the eigenvector recurrence for `t_k = t0 k` reads
//! `-t0 [k f_{k+1} + (N+1-k) f_{k-1}] = E f_k`, so the binomial ground state is
//! an exact eigenvector.
//!
//! Sites and bonds are 1-based in every public description and file format;
//! the slices themselves are ordinary 0-based Rust slices.

use std::io::{Read, Write};
use std::ops::Neg;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tolerance, in radians, when comparing hopping phases.
pub const DEFAULT_PHASE_TOL: f64 = 1e-12;

/// How the hopping amplitudes of a chain are specified.
#[derive(Clone, Debug, PartialEq)]
pub enum HoppingProfile<T> {
    /// `t_k = t0 * k^alpha`.
    PowerLaw { t0: T, alpha: T },
    /// The `N - 1` amplitudes given verbatim.
    Explicit(Vec<Complex<T>>),
}

/// Non-Hermitian, PT-symmetric tridiagonal Hamiltonian of an open chain.
#[derive(Clone, Debug, PartialEq)]
pub struct PtChain<T> {
    hopping: Vec<Complex<T>>,
}

/// Explicit tridiagonal entries of a (not necessarily Hermitian) matrix.
///
/// `superdiag[i]` is the `(i, i+1)` entry and `subdiag[i]` the `(i+1, i)` entry.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagElements<T> {
    pub diag: Vec<Complex<T>>,
    pub superdiag: Vec<Complex<T>>,
    pub subdiag: Vec<Complex<T>>,
}

/// Outcome of comparing the phases of every reflected bond pair `(t_k, t_{N-k})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealityCriterionReport<T> {
    pub satisfied: bool,
    /// Smallest 1-based bond index whose pair mismatches, if any.
    pub first_violation: Option<usize>,
    /// `|theta_k - theta_{N-k}|` canonicalized to `[0, pi]`, indexed by bond `k - 1`.
    pub phase_mismatch: Vec<T>,
}

impl<T: Real> RealityCriterionReport<T> {
    pub fn to_f64(&self) -> RealityCriterionReport<f64> {
        RealityCriterionReport {
            satisfied: self.satisfied,
            first_violation: self.first_violation,
            phase_mismatch: self.phase_mismatch.iter().map(|x| x.as_f64()).collect(),
        }
    }
}

/// Builds a chain of `n_sites` sites from a hopping profile.
pub fn build_chain<T: Real>(profile: &HoppingProfile<T>, n_sites: usize) -> Result<PtChain<T>> {
    if n_sites < 2 {
        return Err(Error::TooFewSites(n_sites));
    }
    match profile {
        HoppingProfile::PowerLaw { t0, alpha } => {
            if !(t0.is_finite() && *t0 > T::zero()) {
                return Err(Error::InvalidEnergyScale(t0.as_f64()));
            }
            if !alpha.is_finite() {
                return Err(Error::InvalidExponent(alpha.as_f64()));
            }
            let hopping = (1..n_sites)
                .map(|k| Complex::new(*t0 * T::from_index(k).powf(*alpha), T::zero()))
                .collect();
            PtChain::new(hopping)
        }
        HoppingProfile::Explicit(amplitudes) => {
            if amplitudes.len() != n_sites - 1 {
                return Err(Error::SizeMismatch {
                    expected: n_sites - 1,
                    actual: amplitudes.len(),
                });
            }
            PtChain::new(amplitudes.clone())
        }
    }
}

impl<T: Real> PtChain<T> {
    /// Wraps the bond amplitudes `t_1 .. t_{N-1}`; `N` is one more than their count.
    pub fn new(hopping: Vec<Complex<T>>) -> Result<Self> {
        if hopping.is_empty() {
            return Err(Error::TooFewSites(hopping.len() + 1));
        }
        for (i, t) in hopping.iter().enumerate() {
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::NonFiniteAmplitude(i + 1));
            }
            if t.re == T::zero() && t.im == T::zero() {
                return Err(Error::ZeroAmplitude(i + 1));
            }
        }
        Ok(Self { hopping })
    }

    pub fn n_sites(&self) -> usize {
        self.hopping.len() + 1
    }

    pub fn hopping(&self) -> &[Complex<T>] {
        &self.hopping
    }

    /// Amplitude of bond `k` (1-based).
    pub fn t(&self, k: usize) -> Complex<T> {
        self.hopping[k - 1]
    }

    /// Superdiagonal `-t_k` and subdiagonal `-conj(t_{N-k})`.
    pub fn pt_elements(&self) -> TridiagElements<T> {
        let n = self.n_sites();
        let superdiag = self.hopping.iter().map(|t| -t).collect();
        let subdiag = (1..n).map(|k| -self.t(n - k).conj()).collect();
        TridiagElements {
            diag: vec![Complex::new(T::zero(), T::zero()); n],
            superdiag,
            subdiag,
        }
    }

    /// Whether `P conj(H) P = H` holds entrywise to within `tol`.
    pub fn check_pt_symmetry(&self, tol: T) -> bool {
        check_pt_symmetry(&self.pt_elements(), tol)
    }

    /// Compares `arg t_k` with `arg t_{N-k}` for every bond.
    pub fn reality_criterion(&self, phase_tol: T) -> RealityCriterionReport<T> {
        let n = self.n_sites();
        let phase_mismatch: Vec<T> = (1..n)
            .map(|k| (self.t(k) * self.t(n - k).conj()).arg().abs())
            .collect();
        let first_violation = phase_mismatch
            .iter()
            .position(|&d| d > phase_tol)
            .map(|i| i + 1);
        RealityCriterionReport {
            satisfied: first_violation.is_none(),
            first_violation,
            phase_mismatch,
        }
    }

    /// Applies `H_PT` to a site-amplitude vector.
    pub fn apply(&self, f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = self.n_sites();
        if f.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: f.len(),
            });
        }
        let zero = Complex::new(T::zero(), T::zero());
        let out = (0..n)
            .map(|i| {
                let mut acc = zero;
                if i + 1 < n {
                    acc = acc - self.hopping[i] * f[i + 1];
                }
                if i > 0 {
                    acc = acc - self.hopping[n - 1 - i].conj() * f[i - 1];
                }
                acc
            })
            .collect();
        Ok(out)
    }

    /// Largest absolute row sum of `H_PT`.
    pub fn norm_inf(&self) -> T {
        let n = self.n_sites();
        (0..n)
            .map(|i| {
                let right = if i + 1 < n { self.hopping[i].norm() } else { T::zero() };
                let left = if i > 0 { self.hopping[n - 1 - i].norm() } else { T::zero() };
                right + left
            })
            .fold(T::zero(), T::max)
    }
}

/// `P conj(A) P = A` for explicit tridiagonal entries, where `P` reverses sites.
pub fn check_pt_symmetry<T: Real>(m: &TridiagElements<T>, tol: T) -> bool {
    let n = m.diag.len();
    if m.superdiag.len() + 1 != n || m.subdiag.len() + 1 != n {
        return false;
    }
    let diag_ok = (0..n).all(|i| (m.diag[n - 1 - i].conj() - m.diag[i]).norm() <= tol);
    let off_ok = (0..n - 1).all(|i| {
        let j = n - 2 - i;
        (m.subdiag[j].conj() - m.superdiag[i]).norm() <= tol
            && (m.superdiag[j].conj() - m.subdiag[i]).norm() <= tol
    });
    diag_ok && off_ok
}

/// `f_k -> (-1)^k f_k` with sites counted from 1.
pub fn stagger<S: Clone + Neg<Output = S>>(f: &[S]) -> Vec<S> {
    f.iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { -x.clone() } else { x.clone() })
        .collect()
}

/// `f_k -> f_{N+1-k}`.
pub fn parity_reflect<S: Clone>(f: &[S]) -> Vec<S> {
    f.iter().rev().cloned().collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct HoppingRow {
    k: usize,
    re: f64,
    im: f64,
}

/// Reads a `k,re,im` hopping table with one row per bond `k = 1 .. N-1`.
pub fn read_hopping_csv<T: Real, R: Read>(reader: R) -> Result<Vec<Complex<T>>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["k", "re", "im"] {
        return Err(Error::HoppingFile(format!(
            "expected header `k,re,im`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut amplitudes = Vec::new();
    for (i, row) in rdr.deserialize::<HoppingRow>().enumerate() {
        let row = row?;
        if row.k != i + 1 {
            return Err(Error::HoppingFile(format!(
                "row {} has k = {}, expected {}",
                i + 1,
                row.k,
                i + 1
            )));
        }
        amplitudes.push(Complex::new(T::lit(row.re), T::lit(row.im)));
    }
    if amplitudes.is_empty() {
        return Err(Error::HoppingFile("no bonds listed".into()));
    }
    Ok(amplitudes)
}

pub fn write_hopping_csv<T: Real, W: Write>(writer: W, hopping: &[Complex<T>]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    for (i, t) in hopping.iter().enumerate() {
        wtr.serialize(HoppingRow {
            k: i + 1,
            re: t.re.as_f64(),
            im: t.im.as_f64(),
        })?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn real_chain(t: &[f64]) -> PtChain<f64> {
        PtChain::new(t.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    fn power_law(t0: f64, alpha: f64, n: usize) -> PtChain<f64> {
        build_chain(&HoppingProfile::PowerLaw { t0, alpha }, n).unwrap()
    }

    #[test]
    fn power_law_amplitudes() {
        let t: Vec<f64> = power_law(1.0, 1.0, 5).hopping().iter().map(|t| t.re).collect();
        assert_eq!(t, vec![1.0, 2.0, 3.0, 4.0]);

        let t: Vec<f64> = power_law(1.0, 0.0, 4).hopping().iter().map(|t| t.re).collect();
        assert_eq!(t, vec![1.0, 1.0, 1.0]);

        let t: Vec<f64> = power_law(2.0, -1.0, 5).hopping().iter().map(|t| t.re).collect();
        let expected = [2.0, 1.0, 2.0 / 3.0, 0.5];
        for (a, b) in t.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn build_rejects_bad_input() {
        let explicit = HoppingProfile::Explicit(vec![c(1.0, 0.0); 3]);
        assert!(matches!(
            build_chain(&explicit, 5),
            Err(Error::SizeMismatch { expected: 4, actual: 3 })
        ));
        let zero = HoppingProfile::Explicit(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(build_chain(&zero, 3), Err(Error::ZeroAmplitude(2))));
        let neg = HoppingProfile::PowerLaw { t0: -1.0, alpha: 1.0 };
        assert!(matches!(build_chain(&neg, 3), Err(Error::InvalidEnergyScale(_))));
        let zero_scale = HoppingProfile::PowerLaw { t0: 0.0, alpha: 1.0 };
        assert!(build_chain(&zero_scale, 3).is_err());
        let nan = HoppingProfile::PowerLaw { t0: 1.0, alpha: f64::NAN };
        assert!(matches!(build_chain(&nan, 3), Err(Error::InvalidExponent(_))));
        assert!(matches!(
            build_chain(&HoppingProfile::PowerLaw { t0: 1.0, alpha: 1.0 }, 1),
            Err(Error::TooFewSites(1))
        ));
    }

    #[test]
    fn element_convention() {
        let e = real_chain(&[1.0, 2.0]).pt_elements();
        assert_eq!(e.superdiag, vec![c(-1.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(e.subdiag, vec![c(-2.0, 0.0), c(-1.0, 0.0)]);

        let e = real_chain(&[1.0, 2.0, 3.0, 4.0]).pt_elements();
        let re = |v: &[Complex<f64>]| v.iter().map(|z| z.re).collect::<Vec<_>>();
        assert_eq!(re(&e.superdiag), vec![-1.0, -2.0, -3.0, -4.0]);
        assert_eq!(re(&e.subdiag), vec![-4.0, -3.0, -2.0, -1.0]);

        let e = PtChain::new(vec![c(0.0, 1.0)]).unwrap().pt_elements();
        assert_eq!(e.superdiag, vec![c(0.0, -1.0)]);
        assert_eq!(e.subdiag, vec![c(0.0, 1.0)]);
    }

    #[test]
    fn pt_symmetry() {
        assert!(power_law(1.0, 1.5, 9).check_pt_symmetry(0.0));
        let chain = PtChain::new(vec![c(0.0, 1.0), c(2.0, 0.0), c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!(chain.check_pt_symmetry(0.0));

        let mut raw = real_chain(&[1.0, 2.0, 3.0, 4.0]).pt_elements();
        raw.superdiag[0] = c(-7.0, 0.0);
        assert!(!check_pt_symmetry(&raw, 1e-12));
    }

    #[test]
    fn reality_criterion_cases() {
        let ok = real_chain(&[1.0, 2.0, 3.0, 4.0]).reality_criterion(1e-12);
        assert!(ok.satisfied);
        assert_eq!(ok.first_violation, None);

        let bad = real_chain(&[1.0, 2.0, 3.0, -4.0]).reality_criterion(1e-12);
        assert!(!bad.satisfied);
        assert_eq!(bad.first_violation, Some(1));
        assert!((bad.phase_mismatch[0] - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(bad.phase_mismatch[1], 0.0);

        let phased = PtChain::new(vec![c(0.0, 1.0), c(2.0, 0.0), c(3.0, 0.0), c(0.0, 2.0)]).unwrap();
        let report = phased.reality_criterion(1e-12);
        assert!(report.satisfied);
        assert!(report.phase_mismatch.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn binomial_states_satisfy_recurrence() {
        let chain = power_law(1.0, 1.0, 5);
        let ground: Vec<_> = [1.0, 4.0, 6.0, 4.0, 1.0].iter().map(|&x| c(x, 0.0)).collect();
        let hf = chain.apply(&ground).unwrap();
        let expected = [-4.0, -16.0, -24.0, -16.0, -4.0];
        assert_eq!(hf.iter().map(|z| z.re).collect::<Vec<_>>(), expected);

        let excited: Vec<_> = [4.0, 8.0, 0.0, -8.0, -4.0].iter().map(|&x| c(x, 0.0)).collect();
        let hf = chain.apply(&excited).unwrap();
        for (a, b) in hf.iter().zip(&excited) {
            assert_eq!(*a, b * -2.0);
        }

        let zeros = vec![c(0.0, 0.0); 3];
        assert_eq!(power_law(1.0, 0.3, 3).apply(&zeros).unwrap(), zeros);
        assert!(matches!(chain.apply(&zeros), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn stagger_and_parity() {
        let f = [1.0, 4.0, 6.0, 4.0, 1.0];
        assert_eq!(stagger(&f), vec![-1.0, 4.0, -6.0, 4.0, -1.0]);
        assert_eq!(stagger(&stagger(&f)), f.to_vec());
        assert_eq!(parity_reflect(&[1, 2, 3]), vec![3, 2, 1]);
        assert_eq!(parity_reflect(&f), f.to_vec());

        // Staggering the E = -4 ground state gives the E = +4 state.
        let chain = power_law(1.0, 1.0, 5);
        let g: Vec<_> = f.iter().map(|&x| c(x, 0.0)).collect();
        let s = stagger(&g);
        let hs = chain.apply(&s).unwrap();
        for (a, b) in hs.iter().zip(&s) {
            assert_eq!(*a, b * 4.0);
        }
    }

    #[test]
    fn hopping_csv_round_trip_and_errors() {
        let t = vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.25, -3.0)];
        let mut buf = Vec::new();
        write_hopping_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("k,re,im\n1,1.0,0.5\n"));
        assert!(!text.contains('\r'));
        let back: Vec<Complex<f64>> = read_hopping_csv(buf.as_slice()).unwrap();
        assert_eq!(back, t);

        let wrong_header = "k,real,imag\n1,1,0\n";
        assert!(read_hopping_csv::<f64, _>(wrong_header.as_bytes()).is_err());
        let gap = "k,re,im\n1,1,0\n3,1,0\n";
        assert!(read_hopping_csv::<f64, _>(gap.as_bytes()).is_err());
        let empty = "k,re,im\n";
        assert!(read_hopping_csv::<f64, _>(empty.as_bytes()).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let chain = build_chain(&HoppingProfile::PowerLaw { t0: 1.0f32, alpha: 1.0 }, 5).unwrap();
        assert!(chain.check_pt_symmetry(0.0));
        assert!(chain.reality_criterion(1e-6).satisfied);
    }
}
