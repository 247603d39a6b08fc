use super::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::numerics::{SymmetricMatrix, Vector};

/// `A(X)_i = v_iᵀ X v_i`
pub fn apply_a(x: &SymmetricMatrix, cloud: &PointCloud) -> Result<Vector> {
    if x.dim() != cloud.d() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0}", cloud.d()),
            got: format!("{0}x{0}", x.dim()),
        });
    }
    Ok(Vector::from_fn(cloud.n(), |i| x.quadratic_form(cloud.point(i))))
}

/// `A*(c) = Σ c_i v_i v_iᵀ`
pub fn apply_a_star(c: &Vector, cloud: &PointCloud) -> Result<SymmetricMatrix> {
    if c.len() != cloud.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("length {}", cloud.n()),
            got: format!("length {}", c.len()),
        });
    }
    let mut out = SymmetricMatrix::zeros(cloud.d());
    for i in 0..cloud.n() {
        out.rank_one_update(c[i], cloud.point(i));
    }
    Ok(out)
}

/// `(AA*)_ij = ⟨v_i, v_j⟩²`
pub fn gram(cloud: &PointCloud) -> SymmetricMatrix {
    let mut g = cloud.points().gram_rows();
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            let x = g.get(i, j);
            g.set(i, j, x * x);
        }
    }
    g
}
