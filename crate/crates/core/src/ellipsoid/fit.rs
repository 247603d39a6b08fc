use super::cloud::PointCloud;
use super::operators::apply_a;
use crate::error::Result;
use crate::numerics::{sym_eigenvalues, SymmetricMatrix};

/// Residual tolerance for matrices built here by exact linear solves.
pub const INTERNAL_RESIDUAL_TOL: f64 = 1e-8;
/// Residual tolerance for externally supplied matrices.
pub const EXTERNAL_RESIDUAL_TOL: f64 = 1e-6;
pub const PSD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Fit,
    NotPsd,
    ResidualFail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Fit => "Fit",
            Verdict::NotPsd => "NotPSD",
            Verdict::ResidualFail => "ResidualFail",
        }
    }
}

/// Candidate ellipsoid `X` with its constraint residual and spectrum bounds.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub x: SymmetricMatrix,
    pub residual_inf: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub verdict: Verdict,
}

impl FitResult {
    pub fn is_fit(&self) -> bool {
        self.verdict == Verdict::Fit
    }
}

/// Scores `X`: PSD failure takes precedence over residual failure.
pub fn check_fit(x: SymmetricMatrix, cloud: &PointCloud, residual_tol: f64, psd_tol: f64) -> Result<FitResult> {
    let ax = apply_a(&x, cloud)?;
    let residual_inf = ax.iter().fold(0.0, |m: f64, &a| m.max((a - 1.0).abs()));
    let values = sym_eigenvalues(&x)?;
    let lambda_min = values.first().copied().unwrap_or(0.0);
    let lambda_max = values.last().copied().unwrap_or(0.0);
    let verdict = if lambda_min < -psd_tol * lambda_max.max(1.0) {
        Verdict::NotPsd
    } else if !(residual_inf <= residual_tol) {
        Verdict::ResidualFail
    } else {
        Verdict::Fit
    };
    Ok(FitResult { x, residual_inf, lambda_min, lambda_max, verdict })
}
