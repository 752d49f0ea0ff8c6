//! Dense row-major matrices and column vectors.
//!
//! Every binary operation checks shapes and fails with
//! [`Error::DimensionMismatch`]; nothing broadcasts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A dense `rows x cols` matrix of `f64`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// A column vector of dimension at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnVector(Vec<f64>);

impl Matrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyShape { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left: (1, cols),
                    right: (1, row.len()),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data)
    }

    /// # Panics
    ///
    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Entry `(i, j)`.
    ///
    /// # Panics
    ///
    /// Panics if the index is out of bounds.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Iterator over rows as slices.
    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.cols)
    }

    /// Row-major backing data.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ColumnVector {
        assert!(j < self.cols, "column {j} out of bounds");
        ColumnVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for row in self.iter_rows() {
            for j in 0..rhs.cols {
                data.push(
                    row.iter()
                        .enumerate()
                        .map(|(k, a)| a * rhs.data[k * rhs.cols + j])
                        .sum(),
                );
            }
        }
        Matrix::new(self.rows, rhs.cols, data)
    }

    /// Matrix-vector product `self * x`.
    pub fn matvec(&self, x: &ColumnVector) -> Result<ColumnVector> {
        if self.cols != x.dim() {
            return Err(Error::DimensionMismatch {
                op: "matvec",
                left: self.shape(),
                right: x.shape(),
            });
        }
        Ok(ColumnVector(
            self.iter_rows().map(|row| dot_slices(row, &x.0)).collect(),
        ))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self.data[i * self.cols + j]));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// The matrix with its last column removed (`W♯`). This is the
    /// derivative of `W X` with respect to `X` when the last coordinate of
    /// `X` is pinned to 1.
    pub fn drop_last_column(&self) -> Result<Matrix> {
        if self.cols < 2 {
            return Err(Error::NoColumnToDrop { cols: self.cols });
        }
        let cols = self.cols - 1;
        let data = self
            .iter_rows()
            .flat_map(|row| row[..cols].iter().copied())
            .collect();
        Matrix::new(self.rows, cols, data)
    }

    /// Appends a column on the right.
    pub fn append_column(&self, column: &ColumnVector) -> Result<Matrix> {
        if column.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "append_column",
                left: self.shape(),
                right: column.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for (row, v) in self.iter_rows().zip(column.iter()) {
            data.extend_from_slice(row);
            data.push(v);
        }
        Matrix::new(self.rows, self.cols + 1, data)
    }

    /// `alpha * a + b`.
    pub fn axpy(alpha: f64, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch {
                op: "axpy",
                left: a.shape(),
                right: b.shape(),
            });
        }
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| alpha * x + y)
            .collect();
        Matrix::new(a.rows, a.cols, data)
    }

    /// Multiplies every entry by `alpha`.
    pub fn scale(&self, alpha: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_list(f, row)?;
        }
        f.write_str("]")
    }
}

impl ColumnVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyShape { rows: 0, cols: 1 });
        }
        Ok(Self(data))
    }

    pub fn from_slice(data: &[f64]) -> Result<Self> {
        Self::new(data.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::filled(dim, 0.0)
    }

    pub fn ones(dim: usize) -> Self {
        Self::filled(dim, 1.0)
    }

    fn filled(dim: usize, value: f64) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self(vec![value; dim])
    }

    /// Standard basis vector `e_i` of dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = 1.0;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.0.len(), 1)
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Last coordinate.
    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    /// Copy of `self` with a trailing `1.0` coordinate.
    pub fn augmented(&self) -> ColumnVector {
        let mut data = Vec::with_capacity(self.0.len() + 1);
        data.extend_from_slice(&self.0);
        data.push(1.0);
        ColumnVector(data)
    }

    /// Element-wise product.
    pub fn hadamard(&self, other: &ColumnVector) -> Result<ColumnVector> {
        self.zip_with("hadamard", other, |a, b| a * b)
    }

    pub fn dot(&self, other: &ColumnVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "dot",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(dot_slices(&self.0, &other.0))
    }

    pub fn sub(&self, other: &ColumnVector) -> Result<ColumnVector> {
        self.zip_with("sub", other, |a, b| a - b)
    }

    pub fn add(&self, other: &ColumnVector) -> Result<ColumnVector> {
        self.zip_with("add", other, |a, b| a + b)
    }

    pub fn scale(&self, alpha: f64) -> ColumnVector {
        ColumnVector(self.0.iter().map(|v| alpha * v).collect())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ColumnVector {
        ColumnVector(self.0.iter().map(|&v| f(v)).collect())
    }

    /// The vector as an `n x 1` matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.0.len(),
            cols: 1,
            data: self.0.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    fn zip_with(
        &self,
        op: &'static str,
        other: &ColumnVector,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<ColumnVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(ColumnVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }
}

impl fmt::Display for ColumnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)?;
        f.write_str("ᵀ")
    }
}

/// Outer product `u vᵀ`, shape `u.dim() x v.dim()`.
pub fn outer(u: &ColumnVector, v: &ColumnVector) -> Matrix {
    let data =
        u.0.iter()
            .flat_map(|&a| v.0.iter().map(move |&b| a * b))
            .collect();
    Matrix {
        rows: u.dim(),
        cols: v.dim(),
        data,
    }
}

fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}
