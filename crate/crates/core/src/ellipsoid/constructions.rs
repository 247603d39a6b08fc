use super::cloud::PointCloud;
use super::fit::{check_fit, FitResult, INTERNAL_RESIDUAL_TOL, PSD_TOL};
use super::operators::{apply_a_star, gram};
use crate::error::{Error, Result};
use crate::numerics::{Cholesky, SymmetricMatrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invertibility {
    Invertible,
    /// `n > d(d+1)/2` so the `n` rank-one constraints cannot be independent.
    SingularByDimension,
    SingularNumeric,
}

/// `d(d+1)/2`, the dimension of symmetric `d x d` matrices.
pub fn sym_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

pub fn check_invertibility(cloud: &PointCloud) -> Invertibility {
    if cloud.n() > sym_dim(cloud.d()) {
        return Invertibility::SingularByDimension;
    }
    match Cholesky::factor(&gram(cloud)) {
        Ok(_) => Invertibility::Invertible,
        Err(_) => Invertibility::SingularNumeric,
    }
}

/// Cholesky factor of `AA*`, or `SingularGram`.
pub fn factor_gram(cloud: &PointCloud) -> Result<Cholesky> {
    if cloud.n() > sym_dim(cloud.d()) {
        return Err(Error::SingularGram);
    }
    Cholesky::factor(&gram(cloud)).map_err(|_| Error::SingularGram)
}

/// Closed forms for `M = (d²−d)I + d·11ᵀ`.
#[derive(Debug, Clone)]
pub struct MForms {
    pub m: SymmetricMatrix,
    pub m_inv: SymmetricMatrix,
    pub m_inv_sqrt: SymmetricMatrix,
}

pub fn build_m(n: usize, d: usize) -> Result<MForms> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidArgument("build_m needs d >= 2 and n >= 1".into()));
    }
    let (nf, df) = (n as f64, d as f64);
    let m = SymmetricMatrix::from_fn(n, |i, j| df + if i == j { df * df - df } else { 0.0 });
    let inv_scale = 1.0 / (df * (df - 1.0));
    let m_inv = SymmetricMatrix::from_fn(n, |i, j| {
        inv_scale * ((i == j) as u8 as f64 - 1.0 / (nf + df - 1.0))
    });
    let a = 1.0 / (df * df - df).sqrt();
    let b = 1.0 / (nf * (df * (nf + df - 1.0)).sqrt());
    let m_inv_sqrt = SymmetricMatrix::from_fn(n, |i, j| a * ((i == j) as u8 as f64 - 1.0 / nf) + b);
    Ok(MForms { m, m_inv, m_inv_sqrt })
}

/// `AA* = B + W` with `W = w1ᵀ + 1wᵀ + d11ᵀ`, `B = Γ + αI`, `α = d² + d`.
#[derive(Debug, Clone)]
pub struct BDecomposition {
    pub w: Vector,
    pub w_matrix: SymmetricMatrix,
    pub b: SymmetricMatrix,
    pub gamma: SymmetricMatrix,
    pub alpha: f64,
}

pub fn alpha(d: usize) -> f64 {
    let df = d as f64;
    df * df + df
}

/// `w_i = ‖v_i‖² − d`
pub fn w_vector(cloud: &PointCloud) -> Vector {
    let d = cloud.d() as f64;
    Vector::from_fn(cloud.n(), |i| cloud.norms_sq()[i] - d)
}

pub fn decompose_b(cloud: &PointCloud) -> BDecomposition {
    let d = cloud.d() as f64;
    let w = w_vector(cloud);
    let w_matrix = SymmetricMatrix::from_fn(cloud.n(), |i, j| w[i] + w[j] + d);
    let b = gram(cloud).sub(&w_matrix);
    let a = alpha(cloud.d());
    let mut gamma = b.clone();
    gamma.add_diagonal(-a);
    BDecomposition { w, w_matrix, b, gamma, alpha: a }
}

/// `X_LS = A*((AA*)⁻¹ 1)`, the minimum-Frobenius solution of `A(X) = 1`.
pub fn fit_least_squares(cloud: &PointCloud) -> Result<FitResult> {
    let chol = factor_gram(cloud)?;
    let u = chol.solve(&Vector::ones(cloud.n()))?;
    check_fit(apply_a_star(&u, cloud)?, cloud, INTERNAL_RESIDUAL_TOL, PSD_TOL)
}

/// `X_IP = I/d + A*(c)` with `c = −(1/d)(AA*)⁻¹ w`.
pub fn fit_identity_perturbation(cloud: &PointCloud) -> Result<FitResult> {
    let chol = factor_gram(cloud)?;
    let d = cloud.d() as f64;
    let c = chol.solve(&w_vector(cloud))?.scaled(-1.0 / d);
    let mut x = apply_a_star(&c, cloud)?;
    x.add_diagonal(1.0 / d);
    check_fit(x, cloud, INTERNAL_RESIDUAL_TOL, PSD_TOL)
}
