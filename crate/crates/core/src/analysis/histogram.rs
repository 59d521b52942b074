//! Densities of states and IPR distributions.

use serde::Serialize;

use super::IprReport;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default bin count for densities of states.
pub const DEFAULT_DOS_BINS: usize = 101;
/// Default bin count for IPR distributions.
pub const DEFAULT_IPR_BINS: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram<T> {
    /// `bins + 1` ascending edges.
    pub bin_edges: Vec<T>,
    pub counts: Vec<T>,
    /// Counts divided by `N * width`, so that the histogram integrates to one.
    pub normalized: bool,
}

/// How each value is assigned to bins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Binning {
    /// Each value adds one to the bin containing it; the last bin is closed.
    #[default]
    Count,
    /// Each value is shared linearly between the two bins whose centers
    /// bracket it (cloud-in-cell). Values outside the outermost centers go
    /// entirely to the end bin.
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DosOptions {
    pub bins: usize,
    pub normalized: bool,
    /// Divide energies by `max |E|` first.
    pub energy_normalized: bool,
    pub binning: Binning,
    /// Widen the range by half the mean level spacing on each side, so the
    /// extreme levels sit inside their bins like every other level.
    pub pad_half_spacing: bool,
}

impl Default for DosOptions {
    fn default() -> Self {
        Self {
            bins: DEFAULT_DOS_BINS,
            normalized: false,
            energy_normalized: false,
            binning: Binning::Count,
            pad_half_spacing: false,
        }
    }
}

impl<T: Real> Histogram<T> {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> T {
        self.counts.iter().copied().sum()
    }

    pub fn bin_center(&self, j: usize) -> T {
        (self.bin_edges[j] + self.bin_edges[j + 1]) * T::lit(0.5)
    }
}

fn equal_width<T: Real>(values: &[T], lo: T, hi: T, bins: usize, binning: Binning) -> (Vec<T>, Vec<T>) {
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        let half = lo.abs().max(T::one()) * T::lit(0.5);
        (lo - half, hi + half)
    };
    let width = (hi - lo) / T::from_index(bins);
    let edges: Vec<T> = (0..=bins)
        .map(|j| if j == bins { hi } else { lo + width * T::from_index(j) })
        .collect();
    let mut counts = vec![T::zero(); bins];
    let last = bins - 1;
    for &x in values {
        let u = (x - lo) / width;
        match binning {
            Binning::Count => {
                let j = u.floor().to_isize().unwrap_or(0).clamp(0, last as isize) as usize;
                counts[j] = counts[j] + T::one();
            }
            Binning::Linear => {
                let u = u - T::lit(0.5);
                let jf = u.floor();
                let frac = u - jf;
                let j = jf.to_isize().unwrap_or(0);
                if j < 0 {
                    counts[0] = counts[0] + T::one();
                } else if j as usize >= last {
                    counts[last] = counts[last] + T::one();
                } else {
                    let j = j as usize;
                    counts[j] = counts[j] + (T::one() - frac);
                    counts[j + 1] = counts[j + 1] + frac;
                }
            }
        }
    }
    (edges, counts)
}

/// Histogram of energies over equal-width bins spanning `[min, max]`.
pub fn dos<T: Real>(values: &[T], options: &DosOptions) -> Result<Histogram<T>> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if options.bins == 0 {
        return Err(Error::InvalidBins);
    }
    let mut scaled = values.to_vec();
    if options.energy_normalized {
        let peak = values.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        if peak > T::zero() {
            scaled.iter_mut().for_each(|x| *x = *x / peak);
        }
    }
    let mut lo = scaled.iter().copied().fold(T::infinity(), T::min);
    let mut hi = scaled.iter().copied().fold(T::neg_infinity(), T::max);
    if options.pad_half_spacing && scaled.len() > 1 {
        let half = (hi - lo) / T::from_index(scaled.len() - 1) * T::lit(0.5);
        lo = lo - half;
        hi = hi + half;
    }
    let (bin_edges, mut counts) = equal_width(&scaled, lo, hi, options.bins, options.binning);
    if options.normalized {
        let n = T::from_index(values.len());
        for (j, c) in counts.iter_mut().enumerate() {
            *c = *c / (n * (bin_edges[j + 1] - bin_edges[j]));
        }
    }
    Ok(Histogram {
        bin_edges,
        counts,
        normalized: options.normalized,
    })
}

/// Histogram of per-state IPRs, optionally over log-spaced bins.
pub fn ipr_histogram<T: Real>(report: &IprReport<T>, bins: usize, log_scale: bool) -> Result<Histogram<T>> {
    if bins == 0 {
        return Err(Error::InvalidBins);
    }
    let values: Vec<T> = if log_scale {
        report.per_state.iter().map(|x| x.log10()).collect()
    } else {
        report.per_state.clone()
    };
    let lo = values.iter().copied().fold(T::infinity(), T::min);
    let hi = values.iter().copied().fold(T::neg_infinity(), T::max);
    let (mut bin_edges, counts) = equal_width(&values, lo, hi, bins, Binning::Count);
    if log_scale {
        let ten = T::lit(10.0);
        bin_edges.iter_mut().for_each(|e| *e = ten.powf(*e));
    }
    Ok(Histogram {
        bin_edges,
        counts,
        normalized: false,
    })
}
