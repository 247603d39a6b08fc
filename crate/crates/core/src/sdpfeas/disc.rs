//! Average-case discrepancy: samplers, exhaustive `disc(A)`, and the kernel reduction
//! of `SDP(A) = 0` to ellipsoid fitting.

use super::projections::{ef_feasible, FeasibilityConfig, FeasibilityVerdict};
use crate::ellipsoid::PointCloud;
use crate::error::{Error, Result};
use crate::numerics::{sym_eig, Matrix, RngStream};

pub const MAX_DISC_COLUMNS: usize = 24;
const KERNEL_REL_TOL: f64 = 1e-9;

/// An `m x n` matrix, optionally with the ±1 vector planted in its kernel (first entry `+1`).
#[derive(Debug, Clone)]
pub struct DiscInstance {
    pub a: Matrix,
    pub planted: Option<Vec<i8>>,
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m == 0 || n < 2 {
        return Err(Error::InvalidArgument("need m >= 1 and n >= 2".into()));
    }
    Ok(())
}

/// i.i.d. standard normal entries.
pub fn sample_null(m: usize, n: usize, rng: &mut RngStream) -> Result<DiscInstance> {
    check_shape(m, n)?;
    Ok(DiscInstance { a: Matrix::from_fn(m, n, |_, _| rng.next_gaussian()), planted: None })
}

/// Rows `g − (⟨g,v⟩/n) v` with `g ~ N(0, I_n)` and `v` uniform in `{±1}ⁿ`, so `Av = 0`.
pub fn sample_planted(m: usize, n: usize, rng: &mut RngStream) -> Result<DiscInstance> {
    check_shape(m, n)?;
    let mut v: Vec<i8> = (0..n).map(|_| if rng.next_sign() > 0.0 { 1 } else { -1 }).collect();
    if v[0] < 0 {
        v.iter_mut().for_each(|s| *s = -*s);
    }
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m {
        let g: Vec<f64> = (0..n).map(|_| rng.next_gaussian()).collect();
        let proj = g.iter().zip(&v).map(|(x, &s)| x * s as f64).sum::<f64>() / n as f64;
        data.extend(g.iter().zip(&v).map(|(x, &s)| x - proj * s as f64));
    }
    Ok(DiscInstance { a: Matrix::from_rows(m, n, data)?, planted: Some(v) })
}

fn sup_norm_at(a: &Matrix, sigma: &[i8]) -> f64 {
    (0..a.rows())
        .map(|i| a.row(i).iter().zip(sigma).map(|(x, &s)| x * s as f64).sum::<f64>().abs())
        .fold(0.0, f64::max)
}

const REFRESH_EVERY: u64 = 1 << 12;

/// `min_σ ‖Aσ‖_∞` over sign vectors with `σ_1 = +1`, by Gray-code enumeration.
/// Returns the value recomputed exactly at the minimizer.
pub fn disc_bruteforce(inst: &DiscInstance) -> Result<(f64, Vec<i8>)> {
    let a = &inst.a;
    let (m, n) = (a.rows(), a.cols());
    if n > MAX_DISC_COLUMNS {
        return Err(Error::TooLarge(format!("n = {n} exceeds {MAX_DISC_COLUMNS} columns")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty instance".into()));
    }
    let free = n - 1;
    let mut sigma = vec![1i8; n];
    let mut acc: Vec<f64> = (0..m).map(|i| a.row(i).iter().sum()).collect();
    let mut best_val = acc.iter().fold(0.0, |x: f64, y| x.max(y.abs()));
    let mut best = sigma.clone();
    for k in 1u64..(1u64 << free) {
        // Gray code: flip the coordinate at the lowest set bit of k.
        let j = 1 + k.trailing_zeros() as usize;
        sigma[j] = -sigma[j];
        if k % REFRESH_EVERY == 0 {
            for (i, slot) in acc.iter_mut().enumerate() {
                *slot = a.row(i).iter().zip(&sigma).map(|(x, &s)| x * s as f64).sum();
            }
        } else {
            let two_s = 2.0 * sigma[j] as f64;
            for (i, slot) in acc.iter_mut().enumerate() {
                *slot += two_s * a.get(i, j);
            }
        }
        let val = acc.iter().fold(0.0, |x: f64, y| x.max(y.abs()));
        if val < best_val {
            best_val = val;
            best.copy_from_slice(&sigma);
        }
    }
    Ok((sup_norm_at(a, &best), best))
}

/// Orthonormal basis of `ker A` as the columns of an `n x (n − m)` matrix.
pub fn kernel_basis(a: &Matrix) -> Result<Matrix> {
    let (m, n) = (a.rows(), a.cols());
    if m >= n {
        return Err(Error::InvalidArgument(format!("kernel reduction needs m < n, got m = {m}, n = {n}")));
    }
    let e = sym_eig(&a.gram_cols())?;
    let cutoff = KERNEL_REL_TOL * e.max().max(0.0);
    let kept: Vec<usize> = (0..n).filter(|&k| e.values[k] <= cutoff).collect();
    if kept.len() != n - m {
        return Err(Error::RankDeficient { rank: n - kept.len(), expected: m });
    }
    Ok(Matrix::from_fn(n, kept.len(), |i, j| e.vectors.get(i, kept[j])))
}

/// `SDP(A) = 0` iff the rows of a kernel basis have the ellipsoid fitting property.
pub fn sdp_zero_via_kernel(inst: &DiscInstance, cfg: &FeasibilityConfig) -> Result<FeasibilityVerdict> {
    let k = kernel_basis(&inst.a)?;
    ef_feasible(&PointCloud::from_matrix(k)?, cfg)
}
