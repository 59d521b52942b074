use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest chain handled by [`small_roots`].
pub const SMALL_ROOTS_LIMIT: usize = 32;

const MAX_ITERATIONS: usize = 10_000;

/// Coefficients of `det(T - lambda I)`, lowest degree first, built with the
/// same three-term recurrence as [`super::charpoly_eval`].
fn charpoly_coefficients<T: Real>(
    superdiag: &[Complex<T>],
    subdiag: &[Complex<T>],
    diag: &[Complex<T>],
) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut prev2: Vec<Complex<T>> = Vec::new();
    let mut prev = vec![Complex::new(T::one(), T::zero())];
    for k in 0..diag.len() {
        let mut next = vec![zero; prev.len() + 1];
        for (j, &c) in prev.iter().enumerate() {
            next[j] = next[j] + diag[k] * c;
            next[j + 1] = next[j + 1] - c;
        }
        if k > 0 {
            let coupling = superdiag[k - 1] * subdiag[k - 1];
            for (j, &c) in prev2.iter().enumerate() {
                next[j] = next[j] - coupling * c;
            }
        }
        prev2 = std::mem::replace(&mut prev, next);
    }
    prev
}

fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
}

/// All eigenvalues of a small, possibly non-Hermitian, tridiagonal matrix.
///
/// Runs Durand-Kerner on the monic characteristic polynomial, starting from
/// points equally spaced on a circle of radius `1 + max |a_j|`. Iteration stops
/// once every update is below `1e-12 * max(1, max |z|)`. Roots are returned
/// sorted by real part, then imaginary part.
pub fn small_roots<T: Real>(
    superdiag: &[Complex<T>],
    subdiag: &[Complex<T>],
    diag: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > SMALL_ROOTS_LIMIT {
        return Err(Error::SizeLimit {
            what: "polynomial root finder",
            limit: SMALL_ROOTS_LIMIT,
            actual: n,
        });
    }
    for len in [superdiag.len(), subdiag.len()] {
        if len + 1 != n {
            return Err(Error::SizeMismatch {
                expected: n - 1,
                actual: len,
            });
        }
    }

    let mut coeffs = charpoly_coefficients(superdiag, subdiag, diag);
    let lead = coeffs[n];
    for c in coeffs.iter_mut() {
        *c = *c / lead;
    }
    let radius = T::one()
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max);

    // A fixed angular offset keeps the starting points off the real axis.
    let offset = T::lit(0.4);
    let tau = T::TAU();
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| Complex::from_polar(radius, tau * T::from_index(k) / T::from_index(n) + offset))
        .collect();

    let tol = T::lit(1e-12);
    let mut last_update = T::infinity();
    for _ in 0..MAX_ITERATIONS {
        let mut max_update = T::zero();
        for i in 0..n {
            let mut denom = Complex::new(T::one(), T::zero());
            for j in 0..n {
                if j != i {
                    denom = denom * (z[i] - z[j]);
                }
            }
            let delta = horner(&coeffs, z[i]) / denom;
            if delta.re.is_finite() && delta.im.is_finite() {
                z[i] = z[i] - delta;
                max_update = max_update.max(delta.norm());
            }
        }
        last_update = max_update;
        let scale = z.iter().map(|w| w.norm()).fold(T::one(), T::max);
        if max_update < tol * scale {
            sort_roots(&mut z);
            return Ok(z);
        }
    }
    sort_roots(&mut z);
    Err(Error::RootsNoConvergence {
        iterations: MAX_ITERATIONS,
        last_update: last_update.as_f64(),
        best: z
            .iter()
            .map(|w| Complex::new(w.re.as_f64(), w.im.as_f64()))
            .collect(),
    })
}

fn sort_roots<T: Real>(z: &mut [Complex<T>]) {
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    type Elements = (Vec<Complex<f64>>, Vec<Complex<f64>>, Vec<Complex<f64>>);

    fn chain_elements(t: &[f64]) -> Elements {
        let n = t.len() + 1;
        let sup = t.iter().map(|&x| c(-x, 0.0)).collect();
        let sub = (1..n).map(|k| c(-t[n - k - 1], 0.0)).collect();
        (sup, sub, vec![c(0.0, 0.0); n])
    }

    fn assert_roots(got: &[Complex<f64>], expected: &[Complex<f64>], tol: f64) {
        assert_eq!(got.len(), expected.len());
        for e in expected {
            let best = got.iter().map(|g| (g - e).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < tol, "missing root {e}: {got:?}");
        }
    }

    #[test]
    fn coefficients_of_broken_chain() {
        // -lambda^5 + 4 lambda^3 + 32 lambda
        let (sup, sub, diag) = chain_elements(&[1.0, 2.0, 3.0, -4.0]);
        let coeffs = charpoly_coefficients(&sup, &sub, &diag);
        let re: Vec<f64> = coeffs.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.0, 32.0, 0.0, 4.0, 0.0, -1.0]);
    }

    #[test]
    fn real_spectrum_when_criterion_holds() {
        let (sup, sub, diag) = chain_elements(&[1.0, 2.0, 3.0, 4.0]);
        let roots = small_roots(&sup, &sub, &diag).unwrap();
        let expected: Vec<_> = [-4.0, -2.0, 0.0, 2.0, 4.0].iter().map(|&x| c(x, 0.0)).collect();
        assert_roots(&roots, &expected, 1e-10);
    }

    #[test]
    fn complex_pair_when_criterion_fails() {
        let (sup, sub, diag) = chain_elements(&[1.0, 2.0, 3.0, -4.0]);
        let roots = small_roots(&sup, &sub, &diag).unwrap();
        let r8 = 8f64.sqrt();
        let expected = [c(0.0, 0.0), c(r8, 0.0), c(-r8, 0.0), c(0.0, 2.0), c(0.0, -2.0)];
        assert_roots(&roots, &expected, 1e-10);
    }

    #[test]
    fn two_sites_and_limits() {
        let (sup, sub, diag) = chain_elements(&[1.0]);
        let roots = small_roots(&sup, &sub, &diag).unwrap();
        assert_roots(&roots, &[c(-1.0, 0.0), c(1.0, 0.0)], 1e-12);
        assert!((roots[0].re + 1.0).abs() < 1e-12);

        let (sup, sub, diag) = chain_elements(&[1.0; 32]);
        assert!(matches!(small_roots(&sup, &sub, &diag), Err(Error::SizeLimit { .. })));
    }
}
