use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pivots below this fraction of the largest row norm count as zero in float mode.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-13;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_row_major(r, c, rows.into_iter().flatten().collect())
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
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

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Copy of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Self) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                self[(r0 + i, c0 + j)] = src[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// `I + self`.
    pub fn shift_identity(&self, sign: &S) -> Self {
        let mut m = self.scale(sign);
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() + S::one();
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        Ok(self.try_sub(rhs)?.max_abs())
    }

    /// Infinity norm (largest absolute row sum), in float.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant: fraction-free Bareiss elimination for exact scalars,
    /// partial-pivot LU for floats.
    pub fn determinant(&self) -> Result<S> {
        self.require_square("determinant")?;
        Ok(if S::is_exact() {
            bareiss_determinant(self.data.clone(), self.rows)
        } else {
            lu_determinant(self.data.clone(), self.rows)
        })
    }

    /// Determinant of the submatrix on `rows` x `cols`. Empty index lists give 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<S> {
        check_indices(rows, self.rows, "row")?;
        check_indices(cols, self.cols, "column")?;
        if rows.len() != cols.len() {
            return Err(Error::Index(format!(
                "{} rows but {} columns selected",
                rows.len(),
                cols.len()
            )));
        }
        if rows.is_empty() {
            return Ok(S::one());
        }
        self.submatrix(rows, cols).determinant()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_condition().map(|(inv, _)| inv)
    }

    /// Gauss-Jordan inverse with partial pivoting, plus the infinity-norm
    /// condition estimate `‖m‖·‖m⁻¹‖` (float view).
    pub fn inverse_with_condition(&self) -> Result<(Self, f64)> {
        self.require_square("inverse")?;
        let n = self.rows;
        let max_row_norm = self.norm_inf();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| {
                    a[(i, col)]
                        .magnitude()
                        .partial_cmp(&a[(j, col)].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            let pivot = a[(pivot_row, col)].clone();
            let singular = if S::is_exact() {
                pivot.is_zero()
            } else {
                pivot.magnitude() < SINGULAR_PIVOT_RATIO * max_row_norm || pivot.is_zero()
            };
            if singular {
                let condition = if pivot.magnitude() > 0.0 {
                    max_row_norm / pivot.magnitude()
                } else {
                    f64::INFINITY
                };
                return Err(Error::Singular { condition });
            }
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot_inv = S::one() / pivot;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * pivot_inv.clone();
                inv[(col, j)] = inv[(col, j)].clone() * pivot_inv.clone();
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a[(i, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let da = factor.clone() * a[(col, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - da;
                    let di = factor.clone() * inv[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - di;
                }
            }
        }
        let condition = max_row_norm * inv.norm_inf();
        Ok((inv, condition))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= bound) {
        return Err(Error::Index(format!("{what} index {bad} out of range 0..{bound}")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Index(format!("{what} indices {idx:?} not strictly increasing")));
    }
    Ok(())
}

fn bareiss_determinant<S: Scalar>(mut a: Vec<S>, n: usize) -> S {
    if n == 0 {
        return S::one();
    }
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return S::zero(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (pivot.clone() * a[i * n + j].clone()
                    - a[i * n + k].clone() * a[k * n + j].clone())
                    / prev.clone();
                a[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    sign * a[n * n - 1].clone()
}

fn lu_determinant<S: Scalar>(mut a: Vec<S>, n: usize) -> S {
    let mut det = S::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| {
                a[i * n + k]
                    .magnitude()
                    .partial_cmp(&a[j * n + k].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        if a[p * n + k].is_zero() {
            return S::zero();
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            let f = a[i * n + k].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = a[i * n + j].clone() - f.clone() * a[k * n + j].clone();
                a[i * n + j] = v;
            }
        }
    }
    det
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Add for &DenseMatrix<S> {
    type Output = DenseMatrix<S>;

    fn add(self, rhs: Self) -> DenseMatrix<S> {
        self.try_add(rhs).expect("shape mismatch in matrix addition")
    }
}

impl<S: Scalar> Sub for &DenseMatrix<S> {
    type Output = DenseMatrix<S>;

    fn sub(self, rhs: Self) -> DenseMatrix<S> {
        self.try_sub(rhs).expect("shape mismatch in matrix subtraction")
    }
}

impl<S: Scalar> Mul for &DenseMatrix<S> {
    type Output = DenseMatrix<S>;

    fn mul(self, rhs: Self) -> DenseMatrix<S> {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

impl<S: Scalar> Neg for &DenseMatrix<S> {
    type Output = DenseMatrix<S>;

    fn neg(self) -> DenseMatrix<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: fmt::Debug> fmt::Debug for DenseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
