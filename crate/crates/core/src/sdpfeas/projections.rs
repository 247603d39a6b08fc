//! Dykstra alternating projections between the PSD cone and `{X : A(X) = 1}`.

use crate::ellipsoid::{apply_a, apply_a_star, check_fit, factor_gram, sym_dim, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::{sym_eig, Cholesky, SymmetricMatrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityConfig {
    pub max_iters: usize,
    pub tol_residual: f64,
    pub tol_psd: f64,
    pub stall_window: usize,
    pub stall_factor: f64,
}

impl Default for FeasibilityConfig {
    fn default() -> Self {
        Self { max_iters: 5000, tol_residual: 1e-6, tol_psd: 1e-6, stall_window: 500, stall_factor: 0.999 }
    }
}

impl FeasibilityConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.stall_factor > 0.0 && self.stall_factor < 1.0) {
            return Err(Error::InvalidConfig("stall_factor must lie in (0, 1)".into()));
        }
        if self.stall_window == 0 {
            return Err(Error::InvalidConfig("stall_window must be at least 1".into()));
        }
        if !(self.tol_residual > 0.0 && self.tol_psd > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Feasible,
    InfeasibleHeuristic,
    Undecided,
}

impl FeasibilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FeasibilityStatus::Feasible => "Feasible",
            FeasibilityStatus::InfeasibleHeuristic => "InfeasibleHeuristic",
            FeasibilityStatus::Undecided => "Undecided",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FeasibilityVerdict {
    pub status: FeasibilityStatus,
    pub iterations: usize,
    pub final_residual: f64,
    pub witness: Option<SymmetricMatrix>,
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped to 0).
pub fn project_psd(x: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let e = sym_eig(x)?;
    if e.min() >= 0.0 {
        return Ok(x.clone());
    }
    Ok(e.reconstruct_with(|l| l.max(0.0)))
}

/// Nearest point of `{X : A(X) = 1}`: `X − A*((AA*)⁻¹(A(X) − 1))`.
pub fn project_affine(x: &SymmetricMatrix, cloud: &PointCloud, gram_chol: &Cholesky) -> Result<SymmetricMatrix> {
    let r = apply_a(x, cloud)?.add_scaled(-1.0, &Vector::ones(cloud.n()));
    let c = gram_chol.solve(&r)?;
    Ok(x.sub(&apply_a_star(&c, cloud)?))
}

fn residual_inf(x: &SymmetricMatrix, cloud: &PointCloud) -> Result<f64> {
    Ok(apply_a(x, cloud)?.iter().fold(0.0, |m: f64, a| m.max((a - 1.0).abs())))
}

/// Re-checks a candidate with `check_fit` and the absolute PSD tolerance.
fn certify(x: &SymmetricMatrix, cloud: &PointCloud, cfg: &FeasibilityConfig) -> Result<Option<f64>> {
    let fit = check_fit(x.clone(), cloud, cfg.tol_residual, cfg.tol_psd)?;
    Ok((fit.is_fit() && fit.lambda_min >= -cfg.tol_psd).then_some(fit.residual_inf))
}

const PSD_CHECK_EVERY: usize = 25;

/// Heuristic feasibility test for the ellipsoid-fitting SDP, started from `I/d`.
///
/// Clouds with `n > d(d+1)/2` are reported infeasible without iterating.
pub fn ef_feasible(cloud: &PointCloud, cfg: &FeasibilityConfig) -> Result<FeasibilityVerdict> {
    cfg.validate()?;
    let (n, d) = (cloud.n(), cloud.d());
    if n > sym_dim(d) {
        return Ok(FeasibilityVerdict {
            status: FeasibilityStatus::InfeasibleHeuristic,
            iterations: 0,
            final_residual: f64::NAN,
            witness: None,
        });
    }
    let chol = factor_gram(cloud)?;
    let mut x = SymmetricMatrix::scaled_identity(d, 1.0 / d as f64);
    let mut p = SymmetricMatrix::zeros(d);
    let mut q = SymmetricMatrix::zeros(d);
    let mut history: Vec<f64> = Vec::with_capacity(cfg.max_iters);
    for k in 1..=cfg.max_iters {
        let xp = x.add_scaled(1.0, &p);
        let y = project_psd(&xp)?;
        p = xp.sub(&y);
        let yq = y.add_scaled(1.0, &q);
        let x_next = project_affine(&yq, cloud, &chol)?;
        q = yq.sub(&x_next);
        x = x_next;

        let r = residual_inf(&y, cloud)?;
        history.push(r);
        if r <= cfg.tol_residual {
            if let Some(res) = certify(&y, cloud, cfg)? {
                return Ok(FeasibilityVerdict { status: FeasibilityStatus::Feasible, iterations: k, final_residual: res, witness: Some(y) });
            }
        }
        if k % PSD_CHECK_EVERY == 0 {
            if let Some(res) = certify(&x, cloud, cfg)? {
                return Ok(FeasibilityVerdict { status: FeasibilityStatus::Feasible, iterations: k, final_residual: res, witness: Some(x) });
            }
        }
        if k > cfg.stall_window && r > cfg.stall_factor * history[k - 1 - cfg.stall_window] {
            return Ok(FeasibilityVerdict { status: FeasibilityStatus::InfeasibleHeuristic, iterations: k, final_residual: r, witness: None });
        }
    }
    Ok(FeasibilityVerdict {
        status: FeasibilityStatus::Undecided,
        iterations: cfg.max_iters,
        final_residual: history.last().copied().unwrap_or(f64::NAN),
        witness: None,
    })
}
