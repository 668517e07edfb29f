//! Symmetric tridiagonal eigensolver (implicit-shift QL).
//!
//! Dimensions in this crate are tiny (N <= 16), so the solver works on plain
//! vectors and always accumulates eigenvectors.

use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;
const TOL: f64 = 1e-12;

/// Eigen-decomposition of a symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalizes the matrix with main diagonal `diag` and sub/super diagonal
/// `off` (`off.len() == diag.len() - 1`).
pub fn symmetric_tridiagonal(diag: &[f64], off: &[f64]) -> Result<TridiagonalEigen> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    if off.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            actual: off.len(),
        });
    }

    let mut d = diag.to_vec();
    // e[i] couples rows i and i+1; the trailing slot is scratch.
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= TOL * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NoConvergence(MAX_SWEEPS));
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut deflated = false;

            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let zf = row[i + 1];
                    row[i + 1] = s * row[i] + c * zf;
                    row[i] = c * row[i] - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| z.iter().map(|row| row[k]).collect())
        .collect();
    Ok(TridiagonalEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..diag.len() {
            let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
            q = diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bisect_kth(diag: &[f64], off: &[f64], k: usize) -> f64 {
        let bound = diag.iter().map(|v| v.abs()).sum::<f64>()
            + 2.0 * off.iter().map(|v| v.abs()).sum::<f64>();
        let (mut lo, mut hi) = (-bound - 1.0, bound + 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sturm_count(diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn one_by_one() {
        let eig = symmetric_tridiagonal(&[-0.5], &[]).unwrap();
        assert_eq!(eig.values, vec![-0.5]);
        assert_eq!(eig.vectors, vec![vec![1.0]]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, c) = (1.0, 2.0, -3.0);
        let eig = symmetric_tridiagonal(&[a, c], &[b]).unwrap();
        let mean = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((eig.values[0] - (mean - rad)).abs() < 1e-13);
        assert!((eig.values[1] - (mean + rad)).abs() < 1e-13);
    }

    #[test]
    fn matches_sturm_bisection() {
        let diag = [4.0, -1.0, 2.5, 0.3, 7.0, -2.2];
        let off = [1.0, -0.7, 2.0, 0.0, 3.3];
        let eig = symmetric_tridiagonal(&diag, &off).unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            assert!((v - bisect_kth(&diag, &off, k)).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn eigenvectors_satisfy_equation() {
        let diag = [1.0, 2.0, 3.0, 4.0];
        let off = [0.5, -0.25, 1.5];
        let eig = symmetric_tridiagonal(&diag, &off).unwrap();
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            for i in 0..4 {
                let mut hv = diag[i] * v[i];
                if i > 0 {
                    hv += off[i - 1] * v[i - 1];
                }
                if i < 3 {
                    hv += off[i] * v[i + 1];
                }
                assert!((hv - lambda * v[i]).abs() < 1e-12);
            }
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(symmetric_tridiagonal(&[], &[]).is_err());
        assert!(symmetric_tridiagonal(&[1.0, 2.0], &[]).is_err());
    }
}
