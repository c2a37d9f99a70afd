//! Small dense complex-matrix helpers shared by the model types.
//!
//! Matrices are row-major `Vec<Complex64>` of length n*n. Path counts in this
//! problem are tiny (a handful of slits), so a cyclic Jacobi sweep is both
//! simple and accurate enough for the eigenvalue checks.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
// Needed for no_std float math; redundant whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

#[inline]
pub(crate) fn idx(n: usize, row: usize, col: usize) -> usize {
    row * n + col
}

pub(crate) fn max_hermitian_deviation(n: usize, a: &[Complex64]) -> f64 {
    let mut dev: f64 = 0.0;
    for r in 0..n {
        for c in r..n {
            let d = (a[idx(n, r, c)] - a[idx(n, c, r)].conj()).norm();
            if d > dev {
                dev = d;
            }
        }
    }
    dev
}

/// Symmetrize: 0.5 * (A + A^dagger).
pub(crate) fn hermitize(n: usize, a: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); n * n];
    for r in 0..n {
        for c in 0..n {
            out[idx(n, r, c)] = (a[idx(n, r, c)] + a[idx(n, c, r)].conj()) * 0.5;
        }
    }
    out
}

pub(crate) fn matmul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); n * n];
    for r in 0..n {
        for k in 0..n {
            let ark = a[idx(n, r, k)];
            if ark == Complex64::default() {
                continue;
            }
            for c in 0..n {
                out[idx(n, r, c)] += ark * b[idx(n, k, c)];
            }
        }
    }
    out
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut dev: f64 = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = (x - y).norm();
        if d > dev {
            dev = d;
        }
    }
    dev
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues (unsorted) and the unitary Q with eigenvectors as
/// columns, so A = Q diag(values) Q^dagger.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    /// Row-major n*n, column k is the eigenvector of `values[k]`.
    pub vectors: Vec<Complex64>,
}

pub(crate) fn hermitian_eigen(n: usize, a: &[Complex64]) -> HermitianEigen {
    debug_assert_eq!(a.len(), n * n);
    let mut m = hermitize(n, a);
    let mut q = vec![Complex64::default(); n * n];
    for k in 0..n {
        q[idx(n, k, k)] = Complex64::new(1.0, 0.0);
    }
    let scale: f64 = m
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let stop = scale * 1e-15;

    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for qq in (p + 1)..n {
                off = off.max(m[idx(n, p, qq)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for c in (p + 1)..n {
                let apq = m[idx(n, p, c)];
                let r = apq.norm();
                if r <= stop {
                    continue;
                }
                // Phase that makes the (p,c) entry real, then a real Jacobi
                // rotation annihilating it. Combined transform V = D * G with
                // D = diag(1, e^{-i phi}) on the (p,c) plane.
                let phase = apq / r;
                let app = m[idx(n, p, p)].re;
                let aqq = m[idx(n, c, c)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let e = phase.conj(); // e^{-i phi}

                // Columns of V on the (p,c) plane:
                //   col p = (cs, -sn*e), col c = (sn, cs*e)
                for k in 0..n {
                    if k == p || k == c {
                        continue;
                    }
                    let akp = m[idx(n, k, p)];
                    let akq = m[idx(n, k, c)];
                    let new_p = akp * cs - akq * (e * sn);
                    let new_q = akp * sn + akq * (e * cs);
                    m[idx(n, k, p)] = new_p;
                    m[idx(n, k, c)] = new_q;
                    m[idx(n, p, k)] = new_p.conj();
                    m[idx(n, c, k)] = new_q.conj();
                }
                m[idx(n, p, p)] = Complex64::new(app - t * r, 0.0);
                m[idx(n, c, c)] = Complex64::new(aqq + t * r, 0.0);
                m[idx(n, p, c)] = Complex64::default();
                m[idx(n, c, p)] = Complex64::default();

                for k in 0..n {
                    let qkp = q[idx(n, k, p)];
                    let qkq = q[idx(n, k, c)];
                    q[idx(n, k, p)] = qkp * cs - qkq * (e * sn);
                    q[idx(n, k, c)] = qkp * sn + qkq * (e * cs);
                }
            }
        }
    }

    let values = (0..n).map(|k| m[idx(n, k, k)].re).collect();
    HermitianEigen { values, vectors: q }
}

pub(crate) fn min_eigenvalue(n: usize, a: &[Complex64]) -> f64 {
    hermitian_eigen(n, a)
        .values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reconstruct(n: usize, e: &HermitianEigen) -> Vec<Complex64> {
        // Q diag Q^dagger
        let mut out = vec![Complex64::default(); n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = Complex64::default();
                for k in 0..n {
                    s += e.vectors[idx(n, r, k)] * e.values[k] * e.vectors[idx(n, c, k)].conj();
                }
                out[idx(n, r, c)] = s;
            }
        }
        out
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let a = vec![
            Complex64::new(2.0, 0.0),
            Complex64::default(),
            Complex64::default(),
            Complex64::new(-1.0, 0.0),
        ];
        let mut vals = hermitian_eigen(2, &a).values;
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn known_complex_pair() {
        // [[0, -i],[i, 0]] has eigenvalues +-1.
        let a = vec![
            Complex64::default(),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::default(),
        ];
        let mut vals = hermitian_eigen(2, &a).values;
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-13);
        assert!((vals[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            for _ in 0..40 {
                let mut a = vec![Complex64::default(); n * n];
                for r in 0..n {
                    for c in r..n {
                        let z = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                        if r == c {
                            a[idx(n, r, c)] = Complex64::new(z.re, 0.0);
                        } else {
                            a[idx(n, r, c)] = z;
                            a[idx(n, c, r)] = z.conj();
                        }
                    }
                }
                let e = hermitian_eigen(n, &a);
                let back = reconstruct(n, &e);
                assert!(max_abs_diff(&a, &back) < 1e-11, "n={n}");
                let trace: f64 = (0..n).map(|k| a[idx(n, k, k)].re).sum();
                let sum: f64 = e.values.iter().sum();
                assert!((trace - sum).abs() < 1e-11);
            }
        }
    }
}
