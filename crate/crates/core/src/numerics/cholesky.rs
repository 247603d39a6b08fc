use super::linalg::{SymmetricMatrix, Vector};
use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Fails with `NotPositiveDefinite` when a pivot is at most `1e-12 * trace / dim`.
    pub fn factor(a: &SymmetricMatrix) -> Result<Self> {
        let n = a.dim();
        if n == 0 {
            return Ok(Self { dim: 0, l: Vec::new() });
        }
        let tol = (1e-12 * a.trace() / n as f64).max(0.0);
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut pivot = a.get(j, j);
            for k in 0..j {
                pivot -= l[j * n + k] * l[j * n + k];
            }
            if !(pivot > tol) {
                return Err(Error::NotPositiveDefinite { index: j, pivot });
            }
            let ljj = pivot.sqrt();
            l[j * n + j] = ljj;
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                let (ri, rj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
                s -= ri.iter().zip(rj).map(|(x, y)| x * y).sum::<f64>();
                l[i * n + j] = s / ljj;
            }
        }
        Ok(Self { dim: n, l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        let n = self.dim;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("length {n}"),
                got: format!("length {}", b.len()),
            });
        }
        let l = &self.l;
        let mut y = b.as_slice().to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| l[i * n + k] * y[k]).sum();
            y[i] = (y[i] - s) / l[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = ((i + 1)..n).map(|k| l[k * n + i] * y[k]).sum();
            y[i] = (y[i] - s) / l[i * n + i];
        }
        Vector::new(y)
    }

    /// `log det A`
    pub fn log_det(&self) -> f64 {
        (0..self.dim).map(|i| 2.0 * self.l[i * self.dim + i].ln()).sum()
    }
}

/// Solves `A x = b` for symmetric positive definite `A`.
pub fn solve_spd(a: &SymmetricMatrix, b: &Vector) -> Result<Vector> {
    Cholesky::factor(a)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = SymmetricMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 0) => 4.0,
            (1, 1) => 5.0,
            (2, 2) => 6.0,
            (0, 1) => 2.0,
            (1, 2) => 1.0,
            _ => 0.0,
        });
        let x_true = Vector::new(vec![1.0, -2.0, 0.5]).unwrap();
        let b = a.mul_vec(&x_true);
        let x = solve_spd(&a, &b).unwrap();
        assert!(x.sub(&x_true).norm_inf() < 1e-14);
    }

    #[test]
    fn rejects_indefinite_and_singular() {
        let a = SymmetricMatrix::diagonal(&[1.0, -1.0]);
        assert!(matches!(Cholesky::factor(&a), Err(Error::NotPositiveDefinite { index: 1, .. })));
        let mut s = SymmetricMatrix::zeros(2);
        s.rank_one_update(1.0, &[1.0, 1.0]);
        assert!(Cholesky::factor(&s).is_err());
    }

    #[test]
    fn log_det_matches_product() {
        let a = SymmetricMatrix::diagonal(&[2.0, 3.0, 5.0]);
        let c = Cholesky::factor(&a).unwrap();
        assert!((c.log_det() - 30f64.ln()).abs() < 1e-14);
    }
}
