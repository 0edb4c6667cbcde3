//! Square matrix newtypes shared by the transform modules.
//!
//! [`TransformMatrix`] holds real entries, [`IntegerKernel`] holds the small
//! integer payloads that fast algorithms operate on, and [`DiagonalScale`]
//! stands for a diagonal matrix stored as its diagonal.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Square real-valued transform matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix(DMatrix<f64>);

impl TransformMatrix {
    /// Builds an `n`×`n` matrix from row-major entries.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::mismatch(format!("{} entries", n * n), entries.len()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite matrix entry".into()));
        }
        Ok(Self(DMatrix::from_row_slice(n, n, entries)))
    }

    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::mismatch(
                "non-empty square matrix",
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn row(&self, k: usize) -> Vec<f64> {
        self.0.row(k).iter().copied().collect()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        Ok(Self(&self.0 * &rhs.0))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0
            .clone()
            .try_inverse()
            .map(Self)
            .ok_or(Error::Singular)
    }

    /// `diag(scale) · self`, i.e. row `k` multiplied by `scale[k]`.
    pub fn scale_rows(&self, scale: &DiagonalScale) -> Result<Self> {
        self.check_scale(scale)?;
        let mut m = self.0.clone();
        for (k, d) in scale.values().iter().enumerate() {
            m.row_mut(k).scale_mut(*d);
        }
        Ok(Self(m))
    }

    /// `self · diag(scale)`, i.e. column `k` multiplied by `scale[k]`.
    pub fn scale_cols(&self, scale: &DiagonalScale) -> Result<Self> {
        self.check_scale(scale)?;
        let mut m = self.0.clone();
        for (k, d) in scale.values().iter().enumerate() {
            m.column_mut(k).scale_mut(*d);
        }
        Ok(Self(m))
    }

    /// Largest elementwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_order(other)?;
        Ok((&self.0 - &other.0).amax())
    }

    /// Squared Frobenius norm of `self − other`.
    pub fn frobenius_sq_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_order(other)?;
        Ok((&self.0 - &other.0).norm_squared())
    }

    /// Row-major text rendering with `precision` decimals per entry.
    pub fn to_text(&self, precision: usize) -> String {
        let width = precision + 4;
        let mut out = String::new();
        for r in 0..self.n() {
            let line: Vec<String> = (0..self.n())
                .map(|c| format!("{:>width$.precision$}", self.get(r, c)))
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::mismatch(
                format!("{0}x{0}", self.n()),
                format!("{0}x{0}", other.n()),
            ));
        }
        Ok(())
    }

    fn check_scale(&self, scale: &DiagonalScale) -> Result<()> {
        if scale.n() != self.n() {
            return Err(Error::mismatch(self.n(), scale.n()));
        }
        Ok(())
    }
}

/// Square matrix of small signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerKernel {
    n: usize,
    entries: Vec<i64>,
}

impl IntegerKernel {
    pub fn from_row_major(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::mismatch(format!("{} entries", n * n), entries.len()));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<const N: usize>(rows: &[[i64; N]; N]) -> Self {
        Self {
            n: N,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for k in 0..n {
            entries[k * n + k] = 1;
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, k: usize) -> &[i64] {
        &self.entries[k * self.n..(k + 1) * self.n]
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, k)).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Diagonal of `K · Kᵀ`.
    pub fn row_sq_norms(&self) -> Vec<i64> {
        (0..self.n)
            .map(|k| self.row(k).iter().map(|v| v * v).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.n;
        let mut m: Vec<i128> = self.entries.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    m.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            let pivot = m[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] = (m[i * n + j] * pivot - m[i * n + k] * m[k * n + j]) / prev;
                }
                m[i * n + k] = 0;
            }
            prev = pivot;
        }
        sign * m[n * n - 1]
    }

    pub fn to_real(&self) -> TransformMatrix {
        let data: Vec<f64> = self.entries.iter().map(|&v| v as f64).collect();
        TransformMatrix(DMatrix::from_row_slice(self.n, self.n, &data))
    }

    pub fn to_text(&self) -> String {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for r in 0..self.n {
            let line: Vec<String> = self.row(r).iter().map(|v| format!("{v:>width$}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Diagonal matrix with strictly positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScale(Vec<f64>);

impl DiagonalScale {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty diagonal".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain(format!("diagonal entry {v} is not positive")));
        }
        Ok(Self(values))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|v| 1.0 / v).collect())
    }

    pub fn to_matrix(&self) -> TransformMatrix {
        TransformMatrix(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
            self.0.clone(),
        )))
    }
}
