use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `det(T - lambda I)` and its `lambda`-derivative as `mantissa * 2^exponent`.
///
/// Both mantissas share the exponent, so their ratio (the Newton step) is
/// available without ever forming the full-range values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharPolyEval<T> {
    pub mantissa: Complex<T>,
    pub derivative: Complex<T>,
    pub exponent: i64,
}

impl<T: Real> CharPolyEval<T> {
    /// `mantissa * 2^exponent`; may overflow or underflow.
    pub fn value(&self) -> Complex<T> {
        self.mantissa * pow2::<T>(self.exponent)
    }

    /// `|p(lambda) / p'(lambda)|`, the distance a Newton step would move `lambda`.
    pub fn newton_step(&self) -> T {
        let dn = self.derivative.norm();
        if dn == T::zero() {
            if self.mantissa.norm() == T::zero() {
                T::zero()
            } else {
                T::infinity()
            }
        } else {
            self.mantissa.norm() / dn
        }
    }
}

fn pow2<T: Real>(e: i64) -> T {
    T::lit(2.0).powi(e as i32)
}

fn magnitude<T: Real>(z: Complex<T>) -> T {
    z.re.abs().max(z.im.abs())
}

/// Largest power of two kept without rescaling: `2^512` for `f64`.
fn rescale_exponent<T: Real>() -> i64 {
    let max_exp = T::max_value().log2().floor().to_i64().unwrap_or(127) + 1;
    max_exp / 2
}

/// Evaluates the characteristic polynomial of a tridiagonal matrix through
/// `p_k = (d_k - lambda) p_{k-1} - super_{k-1} sub_{k-1} p_{k-2}`.
///
/// Whenever the running values leave `[2^-512, 2^512]` (for `f64`) they are
/// rescaled by an exact power of two and the exponent is accumulated.
pub fn charpoly_eval<T: Real>(
    superdiag: &[Complex<T>],
    subdiag: &[Complex<T>],
    diag: &[Complex<T>],
    lambda: Complex<T>,
) -> Result<CharPolyEval<T>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for len in [superdiag.len(), subdiag.len()] {
        if len + 1 != n {
            return Err(Error::SizeMismatch {
                expected: n - 1,
                actual: len,
            });
        }
    }
    let limit = rescale_exponent::<T>();
    let big = pow2::<T>(limit);
    let small = pow2::<T>(-limit);
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());

    // (p_{k-1}, p_{k-2}) and their derivatives.
    let mut p_prev = one;
    let mut p_prev2 = zero;
    let mut q_prev = zero;
    let mut q_prev2 = zero;
    let mut exponent = 0i64;

    for k in 0..n {
        let shift = diag[k] - lambda;
        let coupling = if k > 0 { superdiag[k - 1] * subdiag[k - 1] } else { zero };
        let p = shift * p_prev - coupling * p_prev2;
        let q = shift * q_prev - p_prev - coupling * q_prev2;
        p_prev2 = p_prev;
        q_prev2 = q_prev;
        p_prev = p;
        q_prev = q;

        let peak = [p_prev, p_prev2, q_prev, q_prev2]
            .into_iter()
            .map(magnitude)
            .fold(T::zero(), T::max);
        if peak > T::zero() && (peak > big || peak < small) {
            let e = peak.log2().floor().to_i64().unwrap_or(0);
            let factor = pow2::<T>(-e);
            p_prev = p_prev * factor;
            p_prev2 = p_prev2 * factor;
            q_prev = q_prev * factor;
            q_prev2 = q_prev2 * factor;
            exponent += e;
        }
    }

    Ok(CharPolyEval {
        mantissa: p_prev,
        derivative: q_prev,
        exponent,
    })
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

    #[test]
    fn two_site_uniform() {
        let r = charpoly_eval(&[c(-1.0, 0.0)], &[c(-1.0, 0.0)], &[c(0.0, 0.0); 2], c(1.0, 0.0)).unwrap();
        assert_eq!(r.value(), c(0.0, 0.0));
        let r = charpoly_eval(&[c(-1.0, 0.0)], &[c(-1.0, 0.0)], &[c(0.0, 0.0); 2], c(3.0, 0.0)).unwrap();
        assert_eq!(r.value(), c(8.0, 0.0));
        assert_eq!(r.derivative * 2f64.powi(r.exponent as i32), c(6.0, 0.0));
    }

    #[test]
    fn broken_chain_factorization() {
        // -lambda (lambda^2 - 8)(lambda^2 + 4)
        let (sup, sub, diag) = chain_elements(&[1.0, 2.0, 3.0, -4.0]);
        for root in [c(0.0, 2.0), c(0.0, -2.0), c(8f64.sqrt(), 0.0), c(0.0, 0.0)] {
            let r = charpoly_eval(&sup, &sub, &diag, root).unwrap();
            assert!(r.value().norm() < 1e-10, "{root}: {}", r.value());
        }
        let lambda = c(1.5, -0.5);
        let expected = -lambda * (lambda * lambda - 8.0) * (lambda * lambda + 4.0);
        let r = charpoly_eval(&sup, &sub, &diag, lambda).unwrap();
        assert!((r.value() - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn odd_zero_diagonal_chain_has_zero_mode() {
        let (sup, sub, diag) = chain_elements(&[0.3, 1.7, 2.2, 0.9]);
        let r = charpoly_eval(&sup, &sub, &diag, c(0.0, 0.0)).unwrap();
        assert_eq!(r.mantissa, c(0.0, 0.0));
    }

    #[test]
    fn renormalization_spans_huge_range() {
        // 600 sites with couplings 1e3: |det| near 1e1800, far beyond f64.
        let n = 600;
        let sup = vec![c(-1e3, 0.0); n - 1];
        let diag = vec![c(0.0, 0.0); n];
        let r = charpoly_eval(&sup, &sup, &diag, c(1.0, 0.0)).unwrap();
        assert!(r.mantissa.norm().is_finite() && r.mantissa.norm() > 0.0);
        assert!(r.exponent > 1000);
        assert!(r.value().norm().is_infinite());
    }

    #[test]
    fn length_checks() {
        assert!(charpoly_eval::<f64>(&[], &[], &[], c(0.0, 0.0)).is_err());
        assert!(charpoly_eval(&[c(1.0, 0.0)], &[], &[c(0.0, 0.0); 2], c(0.0, 0.0)).is_err());
    }
}
