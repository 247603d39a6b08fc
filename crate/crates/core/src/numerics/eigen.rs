//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use super::linalg::{Matrix, SymmetricMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const REL_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Rebuilds `Σ f(λ_i) q_i q_iᵀ`.
    pub fn reconstruct_with(&self, mut f: impl FnMut(f64) -> f64) -> SymmetricMatrix {
        let n = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        SymmetricMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| fl[k] * self.vectors.get(i, k) * self.vectors.get(j, k)).sum()
        })
    }
}

/// Full eigendecomposition.
pub fn sym_eig(a: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let (values, vt) = jacobi(a, true)?;
    let vt = vt.expect("vectors requested");
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    // vt holds eigenvectors as rows.
    let vectors = Matrix::from_fn(n, n, |i, k| vt[order[k] * n + i]);
    Ok(EigenDecomposition { values: sorted, vectors })
}

/// Eigenvalues only, ascending.
pub fn sym_eigenvalues(a: &SymmetricMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(a, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn min_eigenvalue(a: &SymmetricMatrix) -> Result<f64> {
    Ok(sym_eigenvalues(a)?.first().copied().unwrap_or(0.0))
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

fn jacobi(m: &SymmetricMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let n = m.dim();
    let mut a = m.raw().to_vec();
    let mut v = want_vectors.then(|| {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    });
    let threshold = REL_TOL * m.frobenius();
    let mut off = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
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
                rotate_rows(&mut a, n, p, q, c, s);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        a[k * n + p] = a[p * n + k];
                        a[k * n + q] = a[q * n + k];
                    }
                }
                if let Some(v) = v.as_mut() {
                    rotate_rows(v, n, p, q, c, s);
                }
            }
        }
        off = off_diagonal_norm(&a, n);
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, v))
}

/// Applies the rotation to rows `p` and `q` of an `n x n` row-major buffer.
#[inline]
fn rotate_rows(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = a.split_at_mut(q * n);
    let rp = &mut head[p * n..(p + 1) * n];
    let rq = &mut tail[..n];
    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Operator (spectral) norm of a rectangular matrix.
///
/// Zero rows and columns are dropped first, then the smaller Gram matrix is diagonalized.
pub fn operator_norm(m: &Matrix) -> Result<f64> {
    let m = m.compress_zeros();
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let gram = if m.rows() <= m.cols() { m.gram_rows() } else { m.gram_cols() };
    let top = sym_eigenvalues(&gram)?.last().copied().unwrap_or(0.0);
    Ok(top.max(0.0).sqrt())
}

/// Spectral norm of a symmetric matrix, `max |λ|`.
pub fn symmetric_operator_norm(a: &SymmetricMatrix) -> Result<f64> {
    let vals = sym_eigenvalues(a)?;
    Ok(vals.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = SymmetricMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = sym_eig(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let r = e.reconstruct_with(|l| l);
        assert!(r.max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn zero_and_diagonal() {
        let z = SymmetricMatrix::zeros(4);
        assert_eq!(sym_eigenvalues(&z).unwrap(), vec![0.0; 4]);
        let d = SymmetricMatrix::diagonal(&[3.0, -1.0, 2.0]);
        assert_eq!(sym_eigenvalues(&d).unwrap(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn graph_laplacian_of_path() {
        // Path on n vertices: eigenvalues 2 - 2cos(kπ/n), k = 0..n-1.
        let n = 7;
        let a = SymmetricMatrix::from_fn(n, |i, j| {
            if i == j {
                if i == 0 || i == n - 1 { 1.0 } else { 2.0 }
            } else if j == i + 1 {
                -1.0
            } else {
                0.0
            }
        });
        let vals = sym_eigenvalues(&a).unwrap();
        let mut want: Vec<f64> = (0..n)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (x, y) in vals.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn vectors_orthonormal() {
        let n = 9;
        let a = SymmetricMatrix::from_fn(n, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + (i == j) as u8 as f64);
        let e = sym_eig(&a).unwrap();
        let qtq = e.vectors.transpose().matmul(&e.vectors).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((qtq.get(i, j) - want).abs() < 1e-12);
            }
        }
        assert!(e.reconstruct_with(|l| l).max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn operator_norm_rank_one() {
        let m = Matrix::from_fn(3, 5, |i, j| (i as f64 + 1.0) * (j as f64 - 2.0));
        // ‖u vᵀ‖ = ‖u‖ ‖v‖
        let u: f64 = (1.0f64 + 4.0 + 9.0).sqrt();
        let v: f64 = (4.0f64 + 1.0 + 0.0 + 1.0 + 4.0).sqrt();
        assert!((operator_norm(&m).unwrap() - u * v).abs() < 1e-12);
        assert_eq!(operator_norm(&Matrix::zeros(3, 2)).unwrap(), 0.0);
    }

    #[test]
    fn rejects_nan() {
        let mut a = SymmetricMatrix::zeros(2);
        a.set(0, 1, f64::NAN);
        assert!(sym_eig(&a).is_err());
    }
}
