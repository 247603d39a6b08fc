use std::collections::BTreeMap;

use super::catalogue::catalogue;
use super::evaluate::evaluate;
use super::separator::norm_predictor;
use super::shape::{Shape, ShapeTerm};
use crate::ellipsoid::{decompose_b, gram, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::{operator_norm, Matrix, SymmetricMatrix};

/// Shape expansion `Σ coeff · (catalogue coefficient) · M_name`.
pub type Decomposition = Vec<(&'static str, f64)>;

/// Expansions of `AA*`, `W`, `B` and `Δ` over the catalogue, using `I = M_3c` and `11ᵀ = M_2d + M_3c`.
#[derive(Debug, Clone)]
pub struct Decompositions {
    pub aa_star: Decomposition,
    pub w: Decomposition,
    pub b: Decomposition,
    pub delta: Decomposition,
}

pub fn decompositions(d: usize) -> Decompositions {
    let df = d as f64;
    let r2 = std::f64::consts::SQRT_2;
    let r24 = 24f64.sqrt();
    Decompositions {
        aa_star: vec![
            ("alpha_3c", df * df + 2.0 * df),
            ("alpha_2d", df),
            ("alpha_1", 1.0),
            ("alpha_2a", 2.0),
            ("alpha_2b", r2),
            ("alpha_2c", r2),
            ("alpha_3a", 2.0),
            ("alpha_3b", 2.0 * r2 * df + 4.0 * r2),
            ("alpha_4", r24),
        ],
        w: vec![
            ("alpha_2b", r2),
            ("alpha_2c", r2),
            ("alpha_3b", 2.0 * r2),
            ("alpha_2d", df),
            ("alpha_3c", df),
        ],
        b: vec![
            ("alpha_3c", df * df + df),
            ("alpha_1", 1.0),
            ("alpha_2a", 2.0),
            ("alpha_3a", 2.0),
            ("alpha_3b", 2.0 * r2 * df + 2.0 * r2),
            ("alpha_4", r24),
        ],
        delta: vec![
            ("alpha_1", -1.0),
            ("alpha_2a", -2.0),
            ("alpha_3a", -2.0),
            ("alpha_3b", -(2.0 * r2 * df + 2.0 * r2)),
            ("alpha_4", -r24),
        ],
    }
}

/// Max-entry residuals of the four identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport {
    pub aa_star: f64,
    pub w: f64,
    pub b: f64,
    pub delta: f64,
}

impl DecompositionReport {
    pub fn max(&self) -> f64 {
        self.aa_star.max(self.w).max(self.b).max(self.delta)
    }
}

pub const VERIFY_MAX_DIM: usize = 20;

fn expand(
    decomposition: &Decomposition,
    cat: &BTreeMap<&'static str, ShapeTerm>,
    cache: &mut BTreeMap<&'static str, Matrix>,
    cloud: &PointCloud,
) -> Result<SymmetricMatrix> {
    let n = cloud.n();
    let mut acc = Matrix::zeros(n, n);
    for &(name, c) in decomposition {
        let term = cat
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown catalogue shape {name}")))?;
        if !cache.contains_key(name) {
            cache.insert(name, evaluate(&term.shape, cloud)?);
        }
        acc.add_scaled_assign(c * term.coeff, &cache[name])?;
    }
    SymmetricMatrix::symmetrize(&acc)
}

/// Residuals against the built-in catalogue.
pub fn verify_decompositions(cloud: &PointCloud) -> Result<DecompositionReport> {
    verify_decompositions_with(cloud, &catalogue(), &decompositions(cloud.d()))
}

/// Residuals for a caller-supplied catalogue and expansion (used for mutation tests).
pub fn verify_decompositions_with(
    cloud: &PointCloud,
    cat: &BTreeMap<&'static str, ShapeTerm>,
    decs: &Decompositions,
) -> Result<DecompositionReport> {
    if cloud.n() > VERIFY_MAX_DIM || cloud.d() > VERIFY_MAX_DIM {
        return Err(Error::TooLarge(format!("verification limited to n, d <= {VERIFY_MAX_DIM}")));
    }
    let parts = decompose_b(cloud);
    let aa = gram(cloud);
    let delta = parts.gamma.scaled(-1.0);
    let mut cache = BTreeMap::new();
    let mut residual = |lhs: &SymmetricMatrix, dec: &Decomposition| -> Result<f64> {
        Ok(expand(dec, cat, &mut cache, cloud)?.max_abs_diff(lhs))
    };
    Ok(DecompositionReport {
        aa_star: residual(&aa, &decs.aa_star)?,
        w: residual(&parts.w_matrix, &decs.w)?,
        b: residual(&parts.b, &decs.b)?,
        delta: residual(&delta, &decs.delta)?,
    })
}

/// Operator norm of the evaluated graph matrix (without its coefficient).
pub fn measured_norm(shape: &Shape, cloud: &PointCloud) -> Result<f64> {
    operator_norm(&evaluate(shape, cloud)?)
}

/// One row of the norm-sanity table.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCheck {
    pub measured: f64,
    pub predicted: f64,
    /// `(ln n)^{|V| + 2|E|}` with `|E|` the total edge label.
    pub polylog: f64,
}

impl NormCheck {
    pub fn ratio(&self) -> f64 {
        self.measured / self.predicted
    }

    pub fn within_bound(&self) -> bool {
        self.measured <= self.polylog * self.predicted
    }
}

pub fn norm_check(shape: &Shape, cloud: &PointCloud) -> Result<NormCheck> {
    let (n, d) = (cloud.n(), cloud.d());
    let predicted = norm_predictor(shape, n, d)?.value;
    let measured = measured_norm(shape, cloud)?;
    let power = (shape.num_vertices() + 2 * shape.total_label()) as i32;
    Ok(NormCheck { measured, predicted, polylog: (n as f64).ln().powi(power) })
}
