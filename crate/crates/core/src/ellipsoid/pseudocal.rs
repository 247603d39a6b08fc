//! Degree-2 pseudo-calibration at desk scale, by enumerating exponent matrices.

use super::cloud::PointCloud;
use super::fit::{check_fit, FitResult, EXTERNAL_RESIDUAL_TOL, PSD_TOL};
use crate::error::{Error, Result};
use crate::hermite::{hermite_eval, hermite_table};
use crate::numerics::SymmetricMatrix;

pub const MAX_CELLS: usize = 16;
pub const MAX_TRUNCATION: usize = 6;

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Weight of `h_α` in `Ẽ[1]` (before the column-parity filter), for a row-major `n x d` exponent matrix:
/// `Π_i √(α_i!) h_{α_i}(1) / (√(α!) d^{|α|/2})`.
/// `Ẽ[x_a x_b]` uses the same weight times `1/d`.
pub fn pc_coefficient(alpha: &[usize], n: usize, d: usize) -> Result<f64> {
    if alpha.len() != n * d {
        return Err(Error::DimensionMismatch { expected: format!("{} exponents", n * d), got: format!("{}", alpha.len()) });
    }
    let total: usize = alpha.iter().sum();
    let mut num = 1.0;
    for i in 0..n {
        let row: usize = alpha[i * d..(i + 1) * d].iter().sum();
        num *= factorial(row).sqrt() * hermite_eval(row, 1.0)?;
    }
    let den = alpha.iter().map(|&a| factorial(a)).product::<f64>().sqrt() * (d as f64).powf(total as f64 / 2.0);
    Ok(num / den)
}

/// Pseudo-expectations: `Ẽ[1]` and the off-diagonal `Ẽ[x_a x_b]` (row-major `d x d`, zero diagonal).
#[derive(Debug, Clone)]
pub struct PseudoExpectation {
    pub one: f64,
    pub pairs: Vec<f64>,
}

pub fn pseudo_expectation(cloud: &PointCloud, truncation: usize) -> Result<PseudoExpectation> {
    let (n, d) = (cloud.n(), cloud.d());
    if n * d > MAX_CELLS || truncation > MAX_TRUNCATION {
        return Err(Error::TooLarge(format!(
            "pseudo-calibration needs n*d <= {MAX_CELLS} and T <= {MAX_TRUNCATION}, got n*d = {}, T = {truncation}",
            n * d
        )));
    }
    let h: Vec<Vec<f64>> = (0..n * d)
        .map(|c| hermite_table(truncation, cloud.coord(c / d, c % d)))
        .collect::<Result<_>>()?;
    let mut acc = PseudoExpectation { one: 0.0, pairs: vec![0.0; d * d] };
    let mut alpha = vec![0usize; n * d];
    enumerate(&mut alpha, 0, truncation, &mut |alpha| {
        let mut odd = Vec::new();
        for i in 0..n {
            if alpha[i * d..(i + 1) * d].iter().sum::<usize>() % 2 == 1 {
                return Ok(());
            }
        }
        for a in 0..d {
            if (0..n).map(|i| alpha[i * d + a]).sum::<usize>() % 2 == 1 {
                odd.push(a);
            }
        }
        if !(odd.is_empty() || odd.len() == 2) {
            return Ok(());
        }
        let coeff = pc_coefficient(alpha, n, d)?;
        if coeff == 0.0 {
            return Ok(());
        }
        let h_alpha: f64 = alpha.iter().enumerate().map(|(c, &k)| h[c][k]).product();
        if odd.is_empty() {
            acc.one += coeff * h_alpha;
        } else {
            let v = coeff * h_alpha / d as f64;
            acc.pairs[odd[0] * d + odd[1]] += v;
            acc.pairs[odd[1] * d + odd[0]] += v;
        }
        Ok(())
    })?;
    Ok(acc)
}

fn enumerate(alpha: &mut [usize], cell: usize, budget: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if cell == alpha.len() {
        return f(alpha);
    }
    for k in 0..=budget {
        alpha[cell] = k;
        enumerate(alpha, cell + 1, budget - k, f)?;
    }
    alpha[cell] = 0;
    Ok(())
}

/// `X_aa = 1/d`, `X_ab = Ẽ[x_a x_b] / Ẽ[1]`. The constraints hold only up to truncation error,
/// so the verdict uses the external residual tolerance.
pub fn fit_pseudo_calibration(cloud: &PointCloud, truncation: usize) -> Result<FitResult> {
    let d = cloud.d();
    let pe = pseudo_expectation(cloud, truncation)?;
    if pe.one == 0.0 {
        return Err(Error::InvalidArgument("pseudo-expectation of 1 vanished".into()));
    }
    let x = SymmetricMatrix::from_fn(d, |a, b| if a == b { 1.0 / d as f64 } else { pe.pairs[a * d + b] / pe.one });
    check_fit(x, cloud, EXTERNAL_RESIDUAL_TOL, PSD_TOL)
}
