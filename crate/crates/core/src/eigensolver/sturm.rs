use super::SymTridiag;
use crate::scalar::Real;

/// Number of eigenvalues strictly below `x`.
///
/// Counts negative pivots of the `LDL^T` factorization of `m - x I`. An exact
/// zero pivot is nudged to a tiny positive value, which is equivalent to
/// shifting `x` down by a rounding-sized amount.
pub fn sturm_count<T: Real>(m: &SymTridiag<T>, x: T) -> usize {
    let d = m.diag();
    let e = m.offdiag();
    let nudge = T::epsilon() * (m.norm_inf() + x.abs()).max(T::min_positive_value());

    let mut count = 0;
    let mut q = d[0] - x;
    for i in 0..d.len() {
        if i > 0 {
            q = (d[i] - x) - e[i - 1] * (e[i - 1] / q);
        }
        if q == T::zero() {
            q = nudge;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}
