//! Closed-form reference solutions.
//!
//! Covers the uniform chain (`alpha = 0`), linear hopping (`alpha = 1`) and the
//! symmetric five-site chain. Binomials are evaluated through `ln Gamma` so
//! that `N = 5000` stays finite.

mod verify;

pub use verify::{run_suite, CaseResult, CaseStatus, Suite};

use crate::scalar::Real;
use crate::transform::LogPolar;

/// `ln C(n, k)`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n, "ln_binomial({n}, {k})");
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    lg(n) - lg(k) - lg(n - k)
}

/// `-2 t0 cos(n pi / (N + 1))` for `n = 1 .. N`, ascending.
pub fn uniform_spectrum<T: Real>(n_sites: usize, t0: T) -> Vec<T> {
    let denom = T::from_index(n_sites + 1);
    (1..=n_sites)
        .map(|n| -(t0 + t0) * (T::PI() * T::from_index(n) / denom).cos())
        .collect()
}

/// Density of states of the infinite uniform chain, normalized to one.
///
/// Returns `+inf` exactly at the band edges `|E| = 2 t0` and zero outside.
pub fn uniform_dos<T: Real>(energy: T, t0: T) -> T {
    let x = energy / (t0 + t0);
    if x.abs() > T::one() {
        T::zero()
    } else if x.abs() == T::one() {
        T::infinity()
    } else {
        T::one() / (T::TAU() * t0 * (T::one() - x * x).sqrt())
    }
}

/// Equally spaced levels `-(N-1) t0 + 2 t0 n`, `n = 0 .. N-1`.
pub fn linear_spectrum<T: Real>(n_sites: usize, t0: T) -> Vec<T> {
    let lowest = -T::from_index(n_sites - 1) * t0;
    (0..n_sites)
        .map(|n| lowest + (t0 + t0) * T::from_index(n))
        .collect()
}

/// Ground state of `t_k = t0 k` in the PT picture.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearGroundState<T> {
    /// `ln C(N-1, k-1)` for `k = 1 .. N`.
    pub log_coeffs: Vec<T>,
    /// `-(N - 1)`.
    pub energy_per_t0: T,
}

pub fn linear_ground_state<T: Real>(n_sites: usize) -> LinearGroundState<T> {
    LinearGroundState {
        log_coeffs: (0..n_sites)
            .map(|k| T::lit(ln_binomial(n_sites - 1, k)))
            .collect(),
        energy_per_t0: -T::from_index(n_sites - 1),
    }
}

/// First excited state of `t_k = t0 k` in the PT picture.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearExcitedState<T> {
    /// `(N + 1 - 2k) C(N-1, k-1)` with phase `0` or `pi`.
    pub coeffs: Vec<LogPolar<T>>,
    /// `-(N - 3)`.
    pub energy_per_t0: T,
}

pub fn linear_first_excited<T: Real>(n_sites: usize) -> LinearExcitedState<T> {
    let coeffs = (1..=n_sites)
        .map(|k| {
            let factor = n_sites as f64 + 1.0 - 2.0 * k as f64;
            LogPolar {
                log_mag: T::lit(factor.abs().ln() + ln_binomial(n_sites - 1, k - 1)),
                phase: if factor < 0.0 { T::PI() } else { T::zero() },
            }
        })
        .collect();
    LinearExcitedState {
        coeffs,
        energy_per_t0: T::from_index(3) - T::from_index(n_sites),
    }
}

/// Eigenvalues of the zero-diagonal five-site matrix with couplings `a, b, b, a`.
pub fn five_site_eigenvalues<T: Real>(a: T, b: T) -> Vec<T> {
    let outer = (a * a + T::lit(2.0) * b * b).sqrt();
    let mut values = vec![-outer, -a.abs(), T::zero(), a.abs(), outer];
    values.sort_by(|x, y| x.partial_cmp(y).unwrap());
    values
}

/// Normalized `v_k ~ sqrt(C(N-1, k-1))`: the `alpha = 1` ground state of the
/// Hermitian counterpart.
///
/// The norm `2^((N-1)/2)` is applied numerically, since `lgamma` alone is only
/// good to about `1e-12` relative at a few thousand sites.
pub fn hermitian_ground_state_alpha1<T: Real>(n_sites: usize) -> Vec<T> {
    let peak = 0.5 * ln_binomial(n_sites - 1, (n_sites - 1) / 2);
    let v: Vec<f64> = (0..n_sites)
        .map(|k| (0.5 * ln_binomial(n_sites - 1, k) - peak).exp())
        .collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| T::lit(x / norm)).collect()
}

/// Largest relative deviation of the binomial profile `C(N-1, k-1)` from the
/// Gaussian `exp(-2 (k - c)^2 / (N - 1))`, `c = (N + 1) / 2`, both taken
/// relative to site `floor(N/2)` and sampled for `|k - N/2| <= sqrt(N)`.
pub fn ground_state_gaussian_deviation(n_sites: usize) -> f64 {
    let n = n_sites as f64;
    let center = (n + 1.0) / 2.0;
    let reference = n_sites / 2;
    let gauss = |k: f64| -2.0 * (k - center).powi(2) / (n - 1.0);
    let radius = n.sqrt();
    (1..=n_sites)
        .filter(|&k| (k as f64 - n / 2.0).abs() <= radius)
        .map(|k| {
            let exact = ln_binomial(n_sites - 1, k - 1) - ln_binomial(n_sites - 1, reference - 1);
            let approx = gauss(k as f64) - gauss(reference as f64);
            ((exact - approx).exp() - 1.0).abs()
        })
        .fold(0.0, f64::max)
}
