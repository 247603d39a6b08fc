use super::cloud::PointCloud;
use super::constructions::decompose_b;
use super::fit::{check_fit, FitResult, INTERNAL_RESIDUAL_TOL, PSD_TOL};
use super::operators::apply_a_star;
use crate::error::{Error, Result};
use crate::numerics::{symmetric_operator_norm, Cholesky, Vector};

/// Entries of the 2x2 capacitance matrix `[[r, s], [s, u]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoodburyScalars {
    /// `1ᵀB⁻¹1`
    pub r: f64,
    /// `1 + 1ᵀB⁻¹w`
    pub s: f64,
    /// `−d + wᵀB⁻¹w`
    pub u: f64,
}

impl WoodburyScalars {
    pub fn discriminant(&self) -> f64 {
        self.s * self.s - self.r * self.u
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub one_b_one: f64,
    pub w_b_w: f64,
    pub one_b_w: f64,
    pub op_norm_b_minus_alpha: f64,
    pub alpha: f64,
}

/// Least squares through `B⁻¹` and the rank-two Woodbury correction:
/// `(AA*)⁻¹1 = (s B⁻¹1 − r B⁻¹w) / (s² − ru)`.
pub fn fit_least_squares_woodbury(cloud: &PointCloud) -> Result<(FitResult, WoodburyScalars, Diagnostics)> {
    let parts = decompose_b(cloud);
    let chol = Cholesky::factor(&parts.b).map_err(|_| Error::BNotPositiveDefinite)?;
    let ones = Vector::ones(cloud.n());
    let b_one = chol.solve(&ones)?;
    let b_w = chol.solve(&parts.w)?;
    let r = ones.dot(&b_one);
    let one_b_w = ones.dot(&b_w);
    let w_b_w = parts.w.dot(&b_w);
    let scalars = WoodburyScalars { r, s: 1.0 + one_b_w, u: w_b_w - cloud.d() as f64 };
    let disc = scalars.discriminant();
    if !(disc != 0.0 && disc.is_finite()) {
        return Err(Error::SingularGram);
    }
    let coeffs = b_one.scaled(scalars.s / disc).add_scaled(-scalars.r / disc, &b_w);
    let fit = check_fit(apply_a_star(&coeffs, cloud)?, cloud, INTERNAL_RESIDUAL_TOL, PSD_TOL)?;
    let diagnostics = Diagnostics {
        one_b_one: r,
        w_b_w,
        one_b_w,
        op_norm_b_minus_alpha: symmetric_operator_norm(&parts.gamma)?,
        alpha: parts.alpha,
    };
    Ok((fit, scalars, diagnostics))
}
