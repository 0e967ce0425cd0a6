//! Dense matrices over an arbitrary (possibly noncommutative) ring.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} against {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not triangular under any reordering of its basis")]
    NotTriangularizable,
    #[error("diagonal entry {0} is not a unit")]
    NonMonomialPivot(String),
    #[error("slot embedding needs a 4x4 matrix, got {0}x{1}")]
    NotTwoByTwoTensor(usize, usize),
    #[error("data length {0} does not fit a {1}x{2} matrix")]
    BadShape(usize, usize, usize),
}

/// Ring operations needed by [`Matrix`]. Multiplication need not commute.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Which pair of tensor factors a 4x4 operator acts on inside a threefold product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape(data.len(), rows, cols));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<R> = rows.into_iter().flatten().collect();
        Self::new(r, c, data)
    }

    /// Permutation `P(e_i ⊗ e_j) = e_j ⊗ e_i` on `n^2`-dimensional space.
    pub fn swap(n: usize) -> Self {
        Self::from_fn(n * n, n * n, |row, col| {
            let (i, j) = (col / n, col % n);
            if row == j * n + i {
                R::one()
            } else {
                R::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.data.iter().enumerate().map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn chain(ms: &[&Self]) -> Result<Self, LinalgError> {
        let mut it = ms.iter();
        let first = match it.next() {
            Some(m) => (*m).clone(),
            None => return Err(LinalgError::DimensionMismatch(0, 0, 0, 0)),
        };
        it.try_fold(first, |acc, m| acc.matmul(m))
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    /// `k * M`, multiplying each entry from the left.
    pub fn scale_left(&self, k: &R) -> Self {
        self.map(|v| k.mul(v))
    }

    /// Kronecker product; entry `(i*p + k, j*q + l)` is `A[i][j] * B[k][l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            let a = self.get(r / p, c / q);
            if a.is_zero() {
                R::zero()
            } else {
                a.mul(other.get(r % p, c % q))
            }
        })
    }

    /// Embeds a 4x4 operator on two 2-dimensional factors into the 8-dimensional triple
    /// product.
    pub fn slot_embed(&self, slot: Slot) -> Result<Self, LinalgError> {
        if self.rows != 4 || self.cols != 4 {
            return Err(LinalgError::NotTwoByTwoTensor(self.rows, self.cols));
        }
        let id2 = Self::identity(2);
        Ok(match slot {
            Slot::S12 => self.kron(&id2),
            Slot::S23 => id2.kron(self),
            Slot::S13 => {
                let p23 = id2.kron(&Self::swap(2));
                Self::chain(&[&p23, &self.kron(&id2), &p23])?
            }
        })
    }
}

impl Matrix<Scalar> {
    /// Exact inverse of a matrix that becomes triangular after reordering its basis, with
    /// unit diagonal entries. The result is checked on both sides before returning.
    pub fn triangular_inverse(&self) -> Result<Self, LinalgError> {
        let n = self.rows;
        if n != self.cols {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, n, n));
        }
        let order = self.dependency_order()?;
        let mut diag_inv = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.get(i, i);
            diag_inv.push(d.invert().map_err(|_| LinalgError::NonMonomialPivot(d.to_string()))?);
        }
        let mut x = Self::zeros(n, n);
        for col in 0..n {
            for &i in &order {
                let mut rhs = if i == col { Scalar::one() } else { Scalar::zero() };
                for j in 0..n {
                    if j != i && !self.get(i, j).is_zero() {
                        rhs -= &(self.get(i, j) * x.get(j, col));
                    }
                }
                x.set(i, col, &diag_inv[i] * &rhs);
            }
        }
        let id = Self::identity(n);
        if self.matmul(&x)? != id || x.matmul(self)? != id {
            return Err(LinalgError::NotTriangularizable);
        }
        Ok(x)
    }

    // Topological order of the basis in which row i only depends on earlier indices.
    fn dependency_order(&self) -> Result<Vec<usize>, LinalgError> {
        let n = self.rows;
        let mut indeg = vec![0usize; n];
        for (i, d) in indeg.iter_mut().enumerate() {
            *d = (0..n).filter(|&j| i != j && !self.get(i, j).is_zero()).count();
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(j) = ready.pop() {
            order.push(j);
            for (i, d) in indeg.iter_mut().enumerate() {
                if i != j && !self.get(i, j).is_zero() {
                    *d -= 1;
                    if *d == 0 {
                        ready.push(i);
                    }
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(LinalgError::NotTriangularizable)
        }
    }

    /// Nested arrays of scalar strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols).map(|j| serde_json::Value::String(self.get(i, j).to_string())).collect(),
                    )
                })
                .collect(),
        )
    }

    /// Total number of scalar terms over all entries.
    pub fn term_count(&self) -> usize {
        self.data.iter().map(Scalar::len).sum()
    }
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &self.data).finish()
    }
}
