//! Small dense vectors and matrices over a [`Field`].
//!
//! Matrices are row-major: `get(r, c)` is row `r`, column `c`, and a linear
//! operator acts on column vectors, so column `j` holds the image of the
//! `j`-th basis vector.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

impl<S: Field> Vector<S> {
    pub fn new(components: Vec<S>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    /// The `index`-th standard basis vector.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[S] {
        &self.0
    }

    pub fn into_components(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn is_negligible(&self) -> bool {
        self.0.iter().all(Field::is_negligible)
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.dim());
        }
        Self(self.0.iter().map(|x| x.clone() * factor.clone()).collect())
    }

    /// `self += factor * other`, skipping the work when `factor` is zero.
    pub fn axpy(&mut self, factor: &S, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a = a.clone() + factor.clone() * b.clone();
            }
        }
    }

    /// Euclidean coordinate pairing `Σ uᵢ vᵢ`; the metric-free dot product.
    pub fn dot(&self, other: &Self) -> S {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Largest absolute component; zero for the zero vector.
    pub fn max_abs(&self) -> S {
        self.0
            .iter()
            .map(Signed::abs)
            .fold(S::zero(), |m, x| if x > m { x } else { m })
    }

    /// Index and value of the largest-magnitude component.
    pub fn argmax_abs(&self) -> Option<(usize, S)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_negligible())
            .map(|(i, x)| (i, x.abs()))
            .fold(None, |best: Option<(usize, S)>, (i, x)| match best {
                Some((_, ref m)) if *m >= x => best,
                _ => Some((i, x)),
            })
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

impl<S: Field> Add for &Vector<S> {
    type Output = Vector<S>;
    fn add(self, rhs: &Vector<S>) -> Vector<S> {
        let mut out = self.clone();
        out.axpy(&S::one(), rhs);
        out
    }
}

impl<S: Field> Sub for &Vector<S> {
    type Output = Vector<S>;
    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        let mut out = self.clone();
        out.axpy(&-S::one(), rhs);
        out
    }
}

impl<S: Field> Neg for &Vector<S> {
    type Output = Vector<S>;
    fn neg(self) -> Vector<S> {
        Vector(self.0.iter().map(|x| -x.clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![S::one(); dim])
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim, dim);
        for (i, x) in entries.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector<S>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vector::dim);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            col.check_dim(rows)?;
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        Ok(m)
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &Vector<S>, v: &Vector<S>) -> Self {
        let mut m = Self::zeros(u.dim(), v.dim());
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                m[(i, j)] = u[i].clone() * v[j].clone();
            }
        }
        m
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

    pub fn column(&self, j: usize) -> Vector<S> {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vector<S> {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * factor.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Result<Vector<S>> {
        v.check_dim(self.cols)?;
        let mut out = Vector::<S>::zeros(self.rows);
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] = out[i].clone() + a.clone() * v[j].clone();
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for callers that already guarantee matching dimensions.
    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        self.mul_vec(v).expect("dimension checked by caller")
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
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
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_negligible(&self) -> bool {
        self.data.iter().all(Field::is_negligible)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `Some(c)` when the matrix is `c·Id`.
    pub fn as_scalar_multiple(&self) -> Option<S> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let first = self.data.first()?.clone();
        (0..self.rows).all(|i| self[(i, i)] == first).then_some(first)
    }

    /// Solves `self · x = rhs` exactly by Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &Vector<S>) -> Result<Vector<S>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        rhs.check_dim(self.rows)?;
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_negligible()).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                b.0.swap(pivot, col);
            }
            let inv = S::one() / a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * inv.clone();
            }
            b[col] = b[col].clone() * inv;
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let sub = f.clone() * a[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - sub;
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
        Ok(b)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Field> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: Field> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: Field> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.matmul(rhs).expect("matrix product dimensions")
    }
}

/// `uᵀ G v`.
pub fn inner<S: Field>(u: &Vector<S>, v: &Vector<S>, metric: &Matrix<S>) -> Result<S> {
    u.check_dim(metric.rows())?;
    v.check_dim(metric.cols())?;
    Ok(u.dot(&metric.mul_vec(v)?))
}

/// Solves `G w = rhs` for a diagonal metric by componentwise division.
pub fn solve_diagonal_metric<S: Field>(metric: &Matrix<S>, rhs: &Vector<S>) -> Result<Vector<S>> {
    if !metric.is_square() {
        return Err(Error::DimensionMismatch { expected: metric.rows(), found: metric.cols() });
    }
    rhs.check_dim(metric.rows())?;
    if !metric.is_diagonal() {
        return Err(Error::InvalidParameter("metric is not diagonal".into()));
    }
    (0..rhs.dim())
        .map(|i| {
            let g = &metric[(i, i)];
            if g.is_zero() {
                Err(Error::SingularMetric { index: i })
            } else {
                Ok(rhs[i].clone() / g.clone())
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Vector)
}

/// Rank of a list of vectors, by exact row reduction.
pub fn rank<S: Field>(vectors: &[Vector<S>]) -> usize {
    let mut rows: Vec<Vec<S>> = vectors.iter().map(|v| v.0.clone()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_negligible()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for c in col..cols {
                let sub = f.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
        rank += 1;
    }
    rank
}
