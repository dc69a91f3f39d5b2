use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// Dense exact vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExactVector {
    entries: Vec<Rational>,
}

impl ExactVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        ExactVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        ExactVector { entries: vec![Rational::zero(); dim] }
    }

    /// Unit vector with a one at 0-based `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = Rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        ExactVector { entries: values.iter().map(|&x| Rational::from_integer(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> ExactVector {
        if s.is_zero() {
            return Self::zeros(self.dim());
        }
        ExactVector { entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &ExactVector) -> Result<ExactVector> {
        self.check_dim(other, "add")?;
        Ok(ExactVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &ExactVector) -> Result<ExactVector> {
        self.check_dim(other, "sub")?;
        Ok(ExactVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &Rational, other: &ExactVector) -> Result<()> {
        self.check_dim(other, "axpy")?;
        if s.is_zero() {
            return Ok(());
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
        Ok(())
    }

    pub fn dot(&self, other: &ExactVector) -> Result<Rational> {
        self.check_dim(other, "dot")?;
        Ok(self.entries.iter().zip(&other.entries).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
    }

    pub fn tensor(&self, other: &ExactVector) -> ExactVector {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        ExactVector { entries }
    }

    /// Returns `Some(c)` when `self == c * other`; `None` if not proportional
    /// or if `other` is zero while `self` is not.
    pub fn proportionality(&self, other: &ExactVector) -> Option<Rational> {
        if self.dim() != other.dim() {
            return None;
        }
        let pivot = other.entries.iter().position(|x| !x.is_zero());
        let Some(pivot) = pivot else {
            return self.is_zero().then(Rational::zero);
        };
        let c = &self.entries[pivot] / &other.entries[pivot];
        self.entries.iter().zip(&other.entries).all(|(a, b)| *a == &c * b).then_some(c)
    }

    fn check_dim(&self, other: &ExactVector, op: &str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{op}: {} vs {}", self.dim(), other.dim())));
        }
        Ok(())
    }
}

impl Index<usize> for ExactVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl IndexMut<usize> for ExactVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.entries[i]
    }
}

/// Dense exact matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        ExactMatrix { rows: n_rows, cols: n_cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Column vector as an n×1 matrix.
    pub fn column(v: &ExactVector) -> Self {
        ExactMatrix { rows: v.dim(), cols: 1, entries: v.entries().to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other, "sub")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &Rational) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn apply(&self, v: &ExactVector) -> Result<ExactVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "apply {}x{} to vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = ExactVector::zeros(self.rows);
        for j in 0..self.cols {
            let x = &v[j];
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] += a * x;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` occupies the most significant index digit.
    pub fn tensor(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn check_same_shape(&self, other: &ExactMatrix, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}
