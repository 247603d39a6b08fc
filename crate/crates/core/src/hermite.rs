//! Normalized (probabilists') Hermite polynomials `h_j = He_j / √(j!)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub const MAX_EVAL_DEGREE: usize = 60;
pub const MAX_PRODUCT_DEGREE: usize = 30;
pub const MAX_POWER: usize = 30;

const PRUNE: f64 = 1e-14;

/// A finite combination `Σ c_k h_k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HermiteExpansion {
    coeffs: BTreeMap<usize, f64>,
}

impl HermiteExpansion {
    /// Builds from `(degree, coefficient)` pairs, summing duplicates and pruning tiny entries.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c: &mut f64| c.abs() >= PRUNE);
        Self { coeffs }
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let top = self.max_degree().unwrap_or(0);
        let h = hermite_table(top, x)?;
        Ok(self.iter().map(|(k, c)| c * h[k]).sum())
    }
}

fn check(degree: usize, max: usize) -> Result<()> {
    if degree > max {
        Err(Error::DegreeTooLarge { degree, max })
    } else {
        Ok(())
    }
}

/// `h_0(x), ..., h_top(x)` by the three-term recurrence.
pub fn hermite_table(top: usize, x: f64) -> Result<Vec<f64>> {
    check(top, MAX_EVAL_DEGREE)?;
    let mut h = Vec::with_capacity(top + 1);
    h.push(1.0);
    if top >= 1 {
        h.push(x);
    }
    for j in 1..top {
        let jf = j as f64;
        let next = (x * h[j] - jf.sqrt() * h[j - 1]) / (jf + 1.0).sqrt();
        h.push(next);
    }
    Ok(h)
}

pub fn hermite_eval(j: usize, x: f64) -> Result<f64> {
    Ok(hermite_table(j, x)?[j])
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Coefficients of `h_i h_j` in the normalized Hermite basis.
pub fn product_coeffs(i: usize, j: usize) -> Result<HermiteExpansion> {
    check(i.max(j), MAX_PRODUCT_DEGREE)?;
    let lo = i.abs_diff(j);
    let terms = (lo..=i + j).step_by(2).map(|k| {
        let s = (i + j + k) / 2;
        let num = (factorial(i) * factorial(j) * factorial(k)).sqrt();
        let den = factorial(s - i) * factorial(s - j) * factorial(s - k);
        (k, num / den)
    });
    Ok(HermiteExpansion::from_terms(terms))
}

/// Coefficients of `x^p` in the normalized Hermite basis.
pub fn power_expansion(p: usize) -> Result<HermiteExpansion> {
    check(p, MAX_POWER)?;
    let terms = (0..=p / 2).map(|m| {
        let k = p - 2 * m;
        let c = factorial(p) / (2f64.powi(m as i32) * factorial(m) * factorial(k).sqrt());
        (k, c)
    });
    Ok(HermiteExpansion::from_terms(terms))
}
