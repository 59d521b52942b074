//! Observables over computed spectra: IPRs, histograms, scaling fits and
//! edge-state detection.
//!
//! IPRs are always taken on eigenvectors of the Hermitian counterpart.

mod histogram;
mod ipr;
mod scaling;

pub use histogram::{dos, ipr_histogram, Binning, DosOptions, Histogram, DEFAULT_DOS_BINS, DEFAULT_IPR_BINS};
pub use ipr::{ipr, ipr_real, ipr_report, IprReport};
pub use scaling::{fit_power_law, scaling_study, ScalingFit, ScalingStudy, SizeIpr, DEFAULT_SIZES, SATURATION_SLOPE};

use serde::Serialize;

use crate::eigensolver::Spectrum;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default IPR above which a state is reported as localized.
pub const DEFAULT_EDGE_THRESHOLD: f64 = 0.05;

/// True when ascending `values` satisfy `|E_n + E_{N+1-n}| <= tol * max |E|`.
pub fn symmetry_check<T: Real>(values: &[T], tol: T) -> bool {
    let n = values.len();
    let scale = values.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    (0..n).all(|i| (values[i] + values[n - 1 - i]).abs() <= tol * scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeState<T> {
    pub index: usize,
    pub energy: T,
    pub ipr: T,
    /// 1-based site of the largest `|v_k|`.
    pub peak_site: usize,
}

/// States whose IPR exceeds `ipr_threshold`, in spectrum order.
pub fn edge_state_report<T: Real>(
    spectrum: &Spectrum<T>,
    report: &IprReport<T>,
    ipr_threshold: T,
) -> Result<Vec<EdgeState<T>>> {
    if !spectrum.has_vectors() {
        return Err(Error::MissingVectors);
    }
    Ok(report
        .per_state
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > ipr_threshold)
        .map(|(index, &x)| {
            let v = spectrum.vector(index).unwrap();
            let mut peak = 0;
            for (k, a) in v.iter().enumerate() {
                if a.abs() > v[peak].abs() {
                    peak = k;
                }
            }
            EdgeState {
                index,
                energy: spectrum.values[index],
                ipr: x,
                peak_site: peak + 1,
            }
        })
        .collect())
}
