//! Dense integer matrices and the Smith normal form.
//!
//! Everything here is exact. The Smith form is computed by repeated
//! elementary row and column operations, always pivoting on the nonzero entry
//! of least absolute value in the working submatrix (ties go to the lowest
//! `(row, col)` index), so the output is a deterministic function of the input.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::{Error, Result, Scalar};

/// Rectangular matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors, all of which must have length `cols`.
    ///
    /// The column count is explicit so that matrices with zero rows keep their
    /// width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integer literals.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from(x)).collect())
                .collect(),
        )
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Returns a copy with `column` appended on the right.
    pub fn with_column(&self, column: &[T]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: column.len(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                column[i].clone()
            }
        }))
    }

    /// Selects the given rows (in order) into a new matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Selects the given columns (in order) into a new matrix.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn checked_mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        }))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Input(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(if n == 0 { T::one() } else { sign * prev })
    }

    /// Rank over the rationals, by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows {
                for j in col + 1..a.cols {
                    let num = a[(i, j)].clone() * a[(rank, col)].clone()
                        - a[(i, col)].clone() * a[(rank, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
                a[(i, col)] = T::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let delta = factor.clone() * self[(source, j)].clone();
            self[(target, j)] = self[(target, j)].clone() + delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for i in 0..self.rows {
            let delta = factor.clone() * self[(i, source)].clone();
            self[(i, target)] = self[(i, target)].clone() + delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on a dimension mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("matrix dimensions do not agree")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, " ]")
    }
}

/// Smith normal form `D = U·A·V` together with the transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    /// Left unimodular transform, `rows × rows`.
    pub u: Matrix<T>,
    /// Diagonal matrix with the shape of the source.
    pub d: Matrix<T>,
    /// Right unimodular transform, `cols × cols`.
    pub v: Matrix<T>,
    /// The nonzero diagonal entries `d_1 | d_2 | … | d_rank`, all positive.
    pub invariant_factors: Vec<T>,
    pub rank: usize,
}

pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    let mut k = 0;
    while k < m.min(n) {
        let Some((pi, pj)) = least_entry(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let pivot = d[(k, k)].clone();
            let mut remainder = false;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = d[(i, k)].clone() / pivot.clone();
                if !q.is_zero() {
                    d.add_row_multiple(i, k, &-q.clone());
                    u.add_row_multiple(i, k, &-q);
                }
                remainder |= !d[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = d[(k, j)].clone() / pivot.clone();
                if !q.is_zero() {
                    d.add_col_multiple(j, k, &-q.clone());
                    v.add_col_multiple(j, k, &-q);
                }
                remainder |= !d[(k, j)].is_zero();
            }

            if !remainder {
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (k + 1..m).find(|&i| {
                    (k + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
                });
                match offender {
                    None => break,
                    Some(i) => {
                        d.add_row_multiple(k, i, &T::one());
                        u.add_row_multiple(k, i, &T::one());
                    }
                }
            }

            // A smaller entry now exists somewhere; pivot on it.
            let (pi, pj) = least_entry(&d, k).expect("submatrix is nonzero");
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
        }

        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }

    let invariant_factors: Vec<T> = (0..k).map(|i| d[(i, i)].clone()).collect();
    Smith {
        u,
        d,
        v,
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

/// Position of the nonzero entry of least absolute value in the submatrix
/// starting at `(k, k)`, ties broken by lowest `(row, col)`.
fn least_entry<T: Scalar>(a: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let abs = x.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                best = Some(((i, j), abs));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Nonnegative generator of the ideal spanned by the `k × k` minors of `a`.
///
/// `k = 0` gives 1 (the empty minor). Values of `k` beyond the rank give 0.
pub fn minor_gcd<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<T> {
    let max = a.rows.min(a.cols);
    if k > max {
        return Err(Error::OutOfRange {
            what: "minor size",
            value: k,
            max,
        });
    }
    let snf = smith_normal_form(a);
    Ok(minor_gcd_from(&snf, k))
}

pub(crate) fn minor_gcd_from<T: Scalar>(snf: &Smith<T>, k: usize) -> T {
    if k > snf.rank {
        return T::zero();
    }
    snf.invariant_factors[..k]
        .iter()
        .fold(T::one(), |acc, d| acc * d.clone())
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    a.rank()
}

/// Finds an integer vector `x` with `A·x = b`, or `None` if there is none.
pub fn solve_integer<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    Ok(solve_with(&smith_normal_form(a), b))
}

/// `A·x = b` ⟺ `D·y = U·b` with `x = V·y`.
pub(crate) fn solve_with<T: Scalar>(snf: &Smith<T>, b: &[T]) -> Option<Vec<T>> {
    let ub = snf.u.mul_vec(b).expect("U is rows x rows");
    let mut y = vec![T::zero(); snf.v.rows];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = c.div_rem(&snf.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y).expect("V is cols x cols"))
}

impl<T: Scalar> Smith<T> {
    /// True when every invariant factor is 1, i.e. the cokernel is free.
    pub fn is_unimodular_diagonal(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}
