//! Real symmetric tridiagonal eigenproblems.
//!
//! [`decompose`] is the production path (implicit QL with Wilkinson shifts).
//! [`sturm_count`], [`charpoly_eval`] and [`small_roots`] share no code with it
//! and serve as independent checks.

mod charpoly;
mod ql;
mod roots;
mod sturm;

pub use charpoly::{charpoly_eval, CharPolyEval};
pub use roots::{small_roots, SMALL_ROOTS_LIMIT};
pub use sturm::sturm_count;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Implicit QL sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS_PER_EIGENVALUE: usize = 50;

/// Symmetric tridiagonal matrix: `diag` of length `N`, `offdiag` of length `N - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Empty);
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::SizeMismatch {
                expected: diag.len() - 1,
                actual: offdiag.len(),
            });
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteAmplitude(0));
        }
        Ok(Self { diag, offdiag })
    }

    /// Zero diagonal with the given couplings.
    pub fn with_zero_diag(offdiag: Vec<T>) -> Result<Self> {
        Self::new(vec![T::zero(); offdiag.len() + 1], offdiag)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn norm_inf(&self) -> T {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s = s + self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s = s + self.offdiag[i].abs();
                }
                s
            })
            .fold(T::zero(), T::max)
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s = s + self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s = s + self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ValuesOnly,
    Full,
}

/// Eigenvalues in ascending order, optionally with orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    pub values: Vec<T>,
    /// Row-major `N x N`; row `n` is the eigenvector of `values[n]`.
    vectors: Option<Vec<T>>,
    /// `max_n ||H v_n - E_n v_n||_2`, when vectors were computed.
    pub max_residual: Option<T>,
    /// `max_{m,n} |<v_m, v_n> - delta_mn|`, when vectors were computed.
    pub max_orthogonality_defect: Option<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    pub fn vector(&self, n: usize) -> Option<&[T]> {
        let dim = self.dim();
        self.vectors.as_ref().map(|v| &v[n * dim..(n + 1) * dim])
    }

    pub fn vectors(&self) -> Option<impl Iterator<Item = &[T]>> {
        let dim = self.dim();
        self.vectors.as_ref().map(|v| v.chunks_exact(dim))
    }

    /// Residual bound promised by [`decompose`]: `100 N eps ||H||_inf`.
    pub fn residual_bound(m: &SymTridiag<T>) -> T {
        T::lit(100.0) * T::from_index(m.dim()) * T::epsilon() * m.norm_inf()
    }

    /// Orthogonality bound promised by [`decompose`]: `100 N eps`.
    pub fn orthogonality_bound(n: usize) -> T {
        T::lit(100.0) * T::from_index(n) * T::epsilon()
    }
}

/// Full or values-only eigendecomposition.
///
/// Each eigenvector's largest-magnitude component (lowest index on ties) is
/// made positive, so the output is fully determined by the input.
pub fn decompose<T: Real>(m: &SymTridiag<T>, mode: Mode) -> Result<Spectrum<T>> {
    let n = m.dim();
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(T::zero());

    let mut z = match mode {
        Mode::Full => {
            let mut z = vec![T::zero(); n * n];
            for i in 0..n {
                z[i * n + i] = T::one();
            }
            Some(z)
        }
        Mode::ValuesOnly => None,
    };

    ql::implicit_ql(&mut d, &mut e, z.as_deref_mut(), MAX_SWEEPS_PER_EIGENVALUE)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| d[i]).collect();

    let vectors = z.map(|z| {
        let mut sorted = Vec::with_capacity(n * n);
        for &i in &order {
            let row = &z[i * n..(i + 1) * n];
            let mut peak = 0;
            for (k, x) in row.iter().enumerate() {
                if x.abs() > row[peak].abs() {
                    peak = k;
                }
            }
            if row[peak] < T::zero() {
                sorted.extend(row.iter().map(|&x| -x));
            } else {
                sorted.extend_from_slice(row);
            }
        }
        sorted
    });

    let mut spectrum = Spectrum {
        values,
        vectors,
        max_residual: None,
        max_orthogonality_defect: None,
    };
    if spectrum.has_vectors() {
        let mut max_res = T::zero();
        for (k, &lambda) in spectrum.values.iter().enumerate() {
            let v = spectrum.vector(k).unwrap();
            let mv = m.matvec(v);
            let r = mv
                .iter()
                .zip(v)
                .map(|(&a, &b)| (a - lambda * b).powi(2))
                .sum::<T>()
                .sqrt();
            max_res = max_res.max(r);
        }
        spectrum.max_residual = Some(max_res);
        spectrum.max_orthogonality_defect = Some(orthogonality_defect(&spectrum));
    }
    Ok(spectrum)
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        for j in 0..4 {
            acc[j] = acc[j] + a[4 * c + j] * b[4 * c + j];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s = s + a[i] * b[i];
    }
    s
}

fn orthogonality_defect<T: Real>(s: &Spectrum<T>) -> T {
    let n = s.dim();
    let mut worst = T::zero();
    for i in 0..n {
        let vi = s.vector(i).unwrap();
        for j in i..n {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((dot(vi, s.vector(j).unwrap()) - target).abs());
        }
    }
    worst
}

/// `||m v - lambda v||_2 / ||v||_2`.
pub fn residual<T: Real>(m: &SymTridiag<T>, v: &[T], lambda: T) -> Result<T> {
    if v.len() != m.dim() {
        return Err(Error::SizeMismatch {
            expected: m.dim(),
            actual: v.len(),
        });
    }
    let norm = v.iter().map(|x| x.powi(2)).sum::<T>().sqrt();
    if norm == T::zero() {
        return Err(Error::ZeroVector);
    }
    let r = m
        .matvec(v)
        .iter()
        .zip(v)
        .map(|(&a, &b)| (a - lambda * b).powi(2))
        .sum::<T>()
        .sqrt();
    Ok(r / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    fn five_site() -> SymTridiag<f64> {
        let s6 = 6f64.sqrt();
        SymTridiag::with_zero_diag(vec![-2.0, -s6, -s6, -2.0]).unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = SymTridiag::with_zero_diag(vec![-1.0]).unwrap();
        let s = decompose(&m, Mode::Full).unwrap();
        close(&s.values, &[-1.0, 1.0], 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = s.vector(0).unwrap();
        let v1 = s.vector(1).unwrap();
        assert!((v0[0] - h).abs() < 1e-15 && (v0[1] - h).abs() < 1e-15);
        assert!((v1[0] - h).abs() < 1e-15 && (v1[1] + h).abs() < 1e-15);
        assert!(residual(&m, v0, -1.0).unwrap() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn five_site_closed_form() {
        let m = five_site();
        let s = decompose(&m, Mode::Full).unwrap();
        for (a, b) in s.values.iter().zip([-4.0, -2.0, 0.0, 2.0, 4.0]) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        let bound = Spectrum::residual_bound(&m);
        assert!(s.max_residual.unwrap() <= bound);
        assert!(s.max_orthogonality_defect.unwrap() <= Spectrum::<f64>::orthogonality_bound(5));
        assert!(residual(&m, s.vector(0).unwrap(), -4.0).unwrap() <= bound);
    }

    #[test]
    fn uniform_four_sites() {
        let m = SymTridiag::with_zero_diag(vec![-1.0f64; 3]).unwrap();
        let s = decompose(&m, Mode::ValuesOnly).unwrap();
        let expected = [-1.618033988749895, -0.6180339887498949, 0.6180339887498949, 1.618033988749895];
        for (a, b) in s.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(s.vector(0).is_none());
        assert!(s.max_residual.is_none());
    }

    #[test]
    fn sign_convention() {
        let m = SymTridiag::new(vec![1.0f64, -2.0, 0.5, 3.0], vec![0.7, -1.2, 0.4]).unwrap();
        let s = decompose(&m, Mode::Full).unwrap();
        for v in s.vectors().unwrap() {
            let peak = v.iter().cloned().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            assert!(peak > 0.0);
        }
    }

    #[test]
    fn residual_definition() {
        let m = five_site();
        let v = [0.3, -1.0, 0.2, 0.9, -0.4];
        let mv = m.matvec(&v);
        let expected = (mv.iter().map(|x| x * x).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>()).sqrt();
        assert!((residual(&m, &v, 0.0).unwrap() - expected).abs() < 1e-15);
        assert!(matches!(residual(&m, &[0.0; 5], 1.0), Err(Error::ZeroVector)));
    }

    #[test]
    fn single_site_and_validation() {
        let m = SymTridiag::new(vec![2.5], vec![]).unwrap();
        let s = decompose(&m, Mode::Full).unwrap();
        assert_eq!(s.values, vec![2.5]);
        assert_eq!(s.vector(0).unwrap(), &[1.0]);
        assert!(SymTridiag::new(vec![0.0, 0.0], vec![]).is_err());
        assert!(SymTridiag::new(vec![0.0, f64::NAN], vec![1.0]).is_err());
        assert!(SymTridiag::<f64>::new(vec![], vec![]).is_err());
    }

    #[test]
    fn decoupled_blocks() {
        // A zero coupling splits the matrix; both blocks must still be solved.
        let m = SymTridiag::new(vec![0.0; 4], vec![-1.0, 0.0, -2.0]).unwrap();
        let s = decompose(&m, Mode::Full).unwrap();
        close(&s.values, &[-2.0, -1.0, 1.0, 2.0], 1e-15);
        assert!(s.max_orthogonality_defect.unwrap() < 1e-15);
    }

    #[test]
    fn single_precision() {
        let s6 = 6f32.sqrt();
        let m = SymTridiag::with_zero_diag(vec![-2.0f32, -s6, -s6, -2.0]).unwrap();
        let s = decompose(&m, Mode::Full).unwrap();
        for (a, b) in s.values.iter().zip([-4.0f32, -2.0, 0.0, 2.0, 4.0]) {
            assert!((a - b).abs() < 1e-5);
        }
        assert!(s.max_residual.unwrap() <= Spectrum::residual_bound(&m));
    }
}
