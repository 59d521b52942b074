#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use ptchain::PtChain64;

/// Bond amplitudes with random moduli in `[0.2, 5]` and `arg t_k = arg t_{N-k}`.
pub fn matched_hopping(max_sites: usize) -> impl Strategy<Value = Vec<Complex64>> {
    (2..=max_sites).prop_flat_map(|n| {
        let bonds = n - 1;
        (
            prop::collection::vec(0.2f64..5.0, bonds),
            prop::collection::vec(-PI..PI, bonds.div_ceil(2)),
        )
            .prop_map(move |(mags, half)| {
                (0..bonds)
                    .map(|k| Complex64::from_polar(mags[k], half[k.min(bonds - 1 - k)]))
                    .collect()
            })
    })
}

pub fn matched_chain(max_sites: usize) -> impl Strategy<Value = PtChain64> {
    matched_hopping(max_sites).prop_map(|h| PtChain64::new(h).unwrap())
}

/// Arbitrary nonzero complex amplitudes, criterion not enforced.
pub fn any_hopping(max_sites: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.2f64..5.0, -PI..PI), 1..max_sites)
        .prop_map(|v| v.into_iter().map(|(r, p)| Complex64::from_polar(r, p)).collect())
}

pub fn complex_vec(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
