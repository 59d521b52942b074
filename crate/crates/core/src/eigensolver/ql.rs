//! Implicit QL iteration for symmetric tridiagonal matrices.
//!
//! Follows the classic `tql2` procedure (Bowdler, Martin, Reinsch, Wilkinson):
//! each sweep chases a bulge with Givens rotations after a Wilkinson shift
//! taken from the leading 2x2 block of the unreduced submatrix.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Diagonalizes in place.
///
/// On entry `d` holds the diagonal and `e[..n-1]` the couplings (`e[n-1]` is
/// scratch). On exit `d` holds the unsorted eigenvalues. When `z` is given it
/// must start as the `n x n` identity; row `i` then ends up as the eigenvector
/// belonging to `d[i]`. Storing eigenvectors as rows keeps every rotation on
/// two contiguous slices.
pub(super) fn implicit_ql<T: Real>(
    d: &mut [T],
    e: &mut [T],
    mut z: Option<&mut [T]>,
    max_sweeps: usize,
) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = T::lit(2.0);
    let mut shift_acc = T::zero();
    let mut tst1 = T::zero();
    e[n - 1] = T::zero();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::NoConvergence {
                        index: l,
                        iterations: max_sweeps,
                    });
                }

                // Wilkinson shift from the leading 2x2 block.
                let g = d[l];
                let p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                shift_acc = shift_acc + h;

                // Bulge chase from the bottom of the block up to row l.
                let mut p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    let r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    if let Some(z) = z.as_deref_mut() {
                        let (head, tail) = z.split_at_mut((i + 1) * n);
                        let zi = &mut head[i * n..];
                        let zi1 = &mut tail[..n];
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let h = *b;
                            *b = s * *a + c * h;
                            *a = c * *a - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + shift_acc;
        e[l] = T::zero();
    }
    Ok(())
}

