use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Dense real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    /// Wraps `data`, rejecting empty or non-finite input.
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidArgument("vector must be non-empty".into()));
        }
        if let Some(i) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("vector entry {i} is not finite")));
        }
        Ok(Self { data })
    }

    pub(crate) fn from_vec(data: Vec<f64>) -> Self {
        debug_assert!(data.iter().all(|x| x.is_finite()));
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        Self { data: vec![0.0; len] }
    }

    pub fn ones(len: usize) -> Self {
        Self { data: vec![1.0; len] }
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.data[i] = 1.0;
        v
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self::from_vec((0..len).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, s: f64) -> Vector {
        Vector::from_vec(self.data.iter().map(|x| s * x).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector::from_vec(self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.add_scaled(-1.0, other)
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.data[i]
    }
}

/// Dense row-major rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_fn(self.rows, |i| self.get(i, j))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{} rows", other.rows),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("length {}", self.cols),
                got: format!("length {}", x.len()),
            });
        }
        Ok(Vector::from_fn(self.rows, |i| {
            self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum()
        }))
    }

    /// `M Mᵀ`
    pub fn gram_rows(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.rows, |i, j| {
            self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum()
        })
    }

    /// `Mᵀ M`
    pub fn gram_cols(&self) -> SymmetricMatrix {
        self.transpose().gram_rows()
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|x| *x *= s);
    }

    /// `self += s * other`
    pub fn add_scaled_assign(&mut self, s: f64, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute entrywise difference; `None` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> Option<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        Some(self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Drops all-zero rows and columns; the operator norm is unchanged.
    pub fn compress_zeros(&self) -> Matrix {
        let keep_rows: Vec<usize> =
            (0..self.rows).filter(|&i| self.row(i).iter().any(|&x| x != 0.0)).collect();
        let keep_cols: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0.0))
            .collect();
        Matrix::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self.get(keep_rows[i], keep_cols[j])
        })
    }
}

/// Dense real symmetric matrix; writes are mirrored so `a(i,j) == a(j,i)` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = s;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Builds from the upper triangle of `f` (`i <= j`), mirroring below.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts an exactly symmetric square matrix.
    pub fn try_from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        for i in 0..m.rows() {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidArgument(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { dim: m.rows(), data: m.as_slice().to_vec() })
    }

    /// Symmetrizes `(M + Mᵀ)/2`.
    pub fn symmetrize(m: &Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Ok(Self::from_fn(m.rows(), |i, j| 0.5 * (m.get(i, j) + m.get(j, i))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn raw(&self) -> &[f64] {
        &self.data
    }


    pub fn to_matrix(&self) -> Matrix {
        Matrix { rows: self.dim, cols: self.dim, data: self.data.clone() }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Frobenius inner product.
    pub fn inner(&self, other: &SymmetricMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        assert_eq!(self.dim, x.len(), "dimension mismatch");
        Vector::from_fn(self.dim, |i| {
            self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum()
        })
    }

    /// `xᵀ A x`
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, xi) in x.iter().enumerate() {
            let row = self.row(i);
            acc += xi * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        }
        acc
    }

    pub fn matmul(&self, other: &SymmetricMatrix) -> Matrix {
        self.to_matrix().matmul(&other.to_matrix()).expect("square dims agree")
    }

    pub fn scaled(&self, s: f64) -> SymmetricMatrix {
        Self { dim: self.dim, data: self.data.iter().map(|x| s * x).collect() }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: f64, other: &SymmetricMatrix) -> SymmetricMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn sub(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        self.add_scaled(-1.0, other)
    }

    /// `self += s * x xᵀ`
    pub fn rank_one_update(&mut self, s: f64, x: &[f64]) {
        assert_eq!(self.dim, x.len(), "dimension mismatch");
        let n = self.dim;
        for i in 0..n {
            let sxi = s * x[i];
            if sxi == 0.0 {
                continue;
            }
            let row = &mut self.data[i * n..(i + 1) * n];
            for (r, xj) in row.iter_mut().zip(x) {
                *r += sxi * xj;
            }
        }
    }

    pub fn add_diagonal(&mut self, s: f64) {
        let n = self.dim;
        for i in 0..n {
            self.data[i * n + i] += s;
        }
    }
}
