//! Power-law fits of min/max IPR against chain size.

use rayon::prelude::*;
use serde::Serialize;

use super::ipr_report;
use crate::eigensolver::Mode;
use crate::error::{Error, Result};
use crate::pipeline::solve_power_law;
use crate::scalar::Real;

/// Below this fitted slope magnitude the IPR is treated as saturated.
pub const SATURATION_SLOPE: f64 = 0.05;

/// Sizes used when none are requested.
pub const DEFAULT_SIZES: [usize; 5] = [100, 200, 500, 1000, 2000];

/// Least-squares fit of `ln IPR = intercept - exponent * ln N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit<T> {
    pub exponent: T,
    pub intercept: T,
    pub r_squared: T,
    pub sizes_used: Vec<usize>,
    /// `(max - min) / mean` of the fitted IPRs.
    pub relative_spread: T,
    /// `|exponent| < SATURATION_SLOPE`: report spread and r^2, not the exponent.
    pub saturated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeIpr<T> {
    #[serde(rename = "N")]
    pub n: usize,
    pub min_ipr: T,
    pub max_ipr: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingStudy<T> {
    pub min_fit: ScalingFit<T>,
    pub max_fit: ScalingFit<T>,
    pub raw: Vec<SizeIpr<T>>,
}

/// Ordinary least squares on `(ln N, ln IPR)`.
pub fn fit_power_law<T: Real>(sizes: &[usize], iprs: &[T]) -> Result<ScalingFit<T>> {
    if sizes.len() != iprs.len() {
        return Err(Error::SizeMismatch {
            expected: sizes.len(),
            actual: iprs.len(),
        });
    }
    if sizes.len() < 2 {
        return Err(Error::InvalidSizes("a fit needs at least two sizes".into()));
    }
    let m = T::from_index(sizes.len());
    let x: Vec<T> = sizes.iter().map(|&n| T::from_index(n).ln()).collect();
    let y: Vec<T> = iprs.iter().map(|v| v.ln()).collect();
    let mx = x.iter().copied().sum::<T>() / m;
    let my = y.iter().copied().sum::<T>() / m;
    let sxx: T = x.iter().map(|&a| (a - mx).powi(2)).sum();
    let sxy: T = x.iter().zip(&y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let syy: T = y.iter().map(|&b| (b - my).powi(2)).sum();
    if sxx == T::zero() {
        return Err(Error::InvalidSizes("sizes must not all be equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        (sxy * sxy / (sxx * syy)).min(T::one()).max(T::zero())
    };
    let mean = iprs.iter().copied().sum::<T>() / m;
    let hi = iprs.iter().copied().fold(T::neg_infinity(), T::max);
    let lo = iprs.iter().copied().fold(T::infinity(), T::min);
    Ok(ScalingFit {
        exponent: -slope,
        intercept,
        r_squared,
        sizes_used: sizes.to_vec(),
        relative_spread: (hi - lo) / mean,
        saturated: slope.abs() < T::lit(SATURATION_SLOPE),
    })
}

/// Min and max IPR for each size of a `t0 k^alpha` chain, with power-law fits.
///
/// Sizes are solved in parallel; results are always ordered as given.
pub fn scaling_study<T: Real>(t0: T, alpha: T, sizes: &[usize]) -> Result<ScalingStudy<T>> {
    if sizes.len() < 2 {
        return Err(Error::InvalidSizes("scaling needs at least two sizes".into()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n < 4) {
        return Err(Error::InvalidSizes(format!("sizes must be >= 4, got {n}")));
    }
    let raw = sizes
        .par_iter()
        .map(|&n| {
            let solution = solve_power_law(t0, alpha, n, Mode::Full)?;
            let report = ipr_report(&solution.spectrum)?;
            Ok(SizeIpr {
                n,
                min_ipr: report.min_ipr,
                max_ipr: report.max_ipr,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mins: Vec<T> = raw.iter().map(|r| r.min_ipr).collect();
    let maxs: Vec<T> = raw.iter().map(|r| r.max_ipr).collect();
    Ok(ScalingStudy {
        min_fit: fit_power_law(sizes, &mins)?,
        max_fit: fit_power_law(sizes, &maxs)?,
        raw,
    })
}
