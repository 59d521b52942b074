use num_complex::Complex;
use serde::Serialize;

use crate::eigensolver::Spectrum;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Inverse participation ratios of every eigenvector of a spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IprReport<T> {
    pub per_state: Vec<T>,
    pub min_ipr: T,
    pub max_ipr: T,
    pub argmin: usize,
    pub argmax: usize,
}

fn ipr_from_weights<T: Real>(weights: impl Iterator<Item = T> + Clone) -> Result<T> {
    // Weights are |f_i|; dividing by the largest keeps the fourth powers in range.
    let peak = weights.clone().fold(T::zero(), T::max);
    if peak == T::zero() {
        return Err(Error::ZeroVector);
    }
    let (s2, s4) = weights.fold((T::zero(), T::zero()), |(s2, s4), w| {
        let x = (w / peak).powi(2);
        (s2 + x, s4 + x * x)
    });
    Ok(s4 / (s2 * s2))
}

/// `sum |f_i|^4 / (sum |f_i|^2)^2`; independent of the normalization of `f`.
pub fn ipr<T: Real>(f: &[Complex<T>]) -> Result<T> {
    ipr_from_weights(f.iter().map(|z| z.norm()))
}

/// [`ipr`] for real amplitudes.
pub fn ipr_real<T: Real>(f: &[T]) -> Result<T> {
    ipr_from_weights(f.iter().map(|x| x.abs()))
}

pub fn ipr_report<T: Real>(spectrum: &Spectrum<T>) -> Result<IprReport<T>> {
    let vectors = spectrum.vectors().ok_or(Error::MissingVectors)?;
    let per_state = vectors.map(ipr_real).collect::<Result<Vec<T>>>()?;
    if per_state.is_empty() {
        return Err(Error::Empty);
    }
    let mut argmin = 0;
    let mut argmax = 0;
    for (i, &x) in per_state.iter().enumerate() {
        if x < per_state[argmin] {
            argmin = i;
        }
        if x > per_state[argmax] {
            argmax = i;
        }
    }
    Ok(IprReport {
        min_ipr: per_state[argmin],
        max_ipr: per_state[argmax],
        argmin,
        argmax,
        per_state,
    })
}
