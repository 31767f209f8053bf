//! Real symmetric eigenvalue solvers.
//!
//! [`sym_eigenvalues`] is a cyclic Jacobi method for dense matrices. It skips
//! zero off-diagonal entries, so the block-sparse density matrices produced by
//! Fock truncations converge in a few cheap sweeps without any fill-in.
//! [`tridiagonal_eigenvalues`] is an implicit QL iteration used for the long
//! tridiagonal Rob-AntiRob blocks, where Jacobi would cost O(n^3) per sweep.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to the
/// Frobenius norm of the input.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Inputs whose entries differ from their transpose by more than this
/// (relative to `max(1, max |a_ij|)`) are rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;

const QL_MAX_ITER: usize = 60;

/// Eigenvalues of a real symmetric matrix, sorted descending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_abs = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let asym = max_asymmetry(m);
    if asym > SYMMETRY_TOL * max_abs.max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }

    // row-major copy, symmetrized
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = JACOBI_REL_TOL * scale;
    let skip = 1e-18 * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                rotate(&mut a, n, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[r * n + p];
        let h = a[r * n + q];
        if g == 0.0 && h == 0.0 {
            continue;
        }
        let new_rp = g - s * (h + g * tau);
        let new_rq = h + s * (g - h * tau);
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`), sorted descending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: off.len(),
        });
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == QL_MAX_ITER {
                return Err(Error::NoConvergence {
                    sweeps: iter,
                    off_norm: e[l].abs(),
                });
            }
            iter += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
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
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|x, y| y.total_cmp(x));
        v
    }

    #[test]
    fn identity() {
        let e = sym_eigenvalues(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(e, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn antidiagonal_pair() {
        let a = 0.37;
        let m = DMatrix::from_row_slice(2, 2, &[0.0, a, a, 0.0]);
        let e = sym_eigenvalues(&m).unwrap();
        assert!((e[0] - a).abs() < 1e-15);
        assert!((e[1] + a).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_block_hand_values() {
        // off-diagonal 3/16 and corner 9/32 -> {3/8, -3/32}
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 3.0 / 16.0, 3.0 / 16.0, 9.0 / 32.0]);
        let e = sym_eigenvalues(&m).unwrap();
        assert!((e[0] - 3.0 / 8.0).abs() < 1e-15);
        assert!((e[1] + 3.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(sym_eigenvalues(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn rejects_non_square() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(sym_eigenvalues(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(sym_eigenvalues(&DMatrix::zeros(4, 4)).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn tridiagonal_matches_known_spectrum() {
        // path-graph Laplacian-like matrix: eigenvalues 2 - 2 cos(k pi / (n+1))
        let n = 12;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let e = tridiagonal_eigenvalues(&diag, &off).unwrap();
        let expect = sorted_desc(
            (1..=n)
                .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos())
                .collect(),
        );
        for (a, b) in e.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    fn sym_matrix(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
        proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
            let m = DMatrix::from_row_slice(n, n, &v);
            (&m + m.transpose()) * 0.5
        })
    }

    proptest! {
        #[test]
        fn jacobi_agrees_with_nalgebra(m in (1usize..9).prop_flat_map(sym_matrix)) {
            let ours = sym_eigenvalues(&m).unwrap();
            let theirs = sorted_desc(m.clone().symmetric_eigen().eigenvalues.iter().copied().collect());
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() < 1e-12);
            }
            let tr: f64 = m.trace();
            prop_assert!((ours.iter().sum::<f64>() - tr).abs() < 1e-10);
        }

        #[test]
        fn tridiagonal_agrees_with_jacobi(
            diag in proptest::collection::vec(-1.0f64..1.0, 1..30),
            seed in proptest::collection::vec(-1.0f64..1.0, 30),
        ) {
            let n = diag.len();
            let off = &seed[..n - 1];
            let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag.clone()));
            for i in 0..n - 1 {
                m[(i, i + 1)] = off[i];
                m[(i + 1, i)] = off[i];
            }
            let a = tridiagonal_eigenvalues(&diag, off).unwrap();
            let b = sym_eigenvalues(&m).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
