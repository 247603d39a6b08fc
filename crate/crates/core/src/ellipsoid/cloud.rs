use crate::error::{Error, Result};
use crate::numerics::{Matrix, RngStream, Vector};

/// `n` points in `R^d`, stored as the rows of an `n x d` matrix.
#[derive(Debug, Clone)]
pub struct PointCloud {
    points: Matrix,
    norms_sq: Vec<f64>,
}

impl PointCloud {
    pub fn from_matrix(points: Matrix) -> Result<Self> {
        if points.rows() == 0 || points.cols() == 0 {
            return Err(Error::InvalidArgument("cloud needs n >= 1 and d >= 1".into()));
        }
        if points.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("cloud has non-finite coordinates".into()));
        }
        let norms_sq = (0..points.rows())
            .map(|i| points.row(i).iter().map(|x| x * x).sum())
            .collect();
        Ok(Self { points, norms_sq })
    }

    pub fn from_points(points: &[Vector]) -> Result<Self> {
        let d = points.first().map(Vector::len).unwrap_or(0);
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: format!("all points of dimension {d}"),
                got: "ragged input".into(),
            });
        }
        let data = points.iter().flat_map(|p| p.iter().copied()).collect();
        Self::from_matrix(Matrix::from_rows(points.len(), d, data)?)
    }

    /// i.i.d. `N(0, I_d)` points drawn from `rng`, row by row.
    pub fn gaussian(n: usize, d: usize, rng: &mut RngStream) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidArgument("cloud needs n >= 1 and d >= 1".into()));
        }
        Self::from_matrix(Matrix::from_fn(n, d, |_, _| rng.next_gaussian()))
    }

    /// Gaussian cloud from stream 0 of `seed`.
    pub fn sample(n: usize, d: usize, seed: u64) -> Result<Self> {
        Self::gaussian(n, d, &mut RngStream::new(seed, 0))
    }

    pub fn n(&self) -> usize {
        self.points.rows()
    }

    pub fn d(&self) -> usize {
        self.points.cols()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        self.points.row(i)
    }

    pub fn coord(&self, i: usize, k: usize) -> f64 {
        self.points.get(i, k)
    }

    pub fn points(&self) -> &Matrix {
        &self.points
    }

    pub fn norms_sq(&self) -> &[f64] {
        &self.norms_sq
    }
}
