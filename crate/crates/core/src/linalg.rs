//! Small dense linear algebra over exact scalars.
//!
//! Matrices here are tiny (a few dozen rows at most), so a plain row-major
//! `Vec` with Gauss–Jordan elimination is all we need.  The routines are
//! generic over the scalar: anything that is a field for [`Matrix::rref`]
//! and friends, any integral domain for [`bareiss_det`].

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One};

/// Exact rational scalar used by the linear solvers.
pub type Q = BigRational;
/// Rational matrix.
pub type QMatrix = Matrix<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Field-like scalar accepted by the elimination routines.
pub trait Scalar: Clone + Num + Neg<Output = Self> + PartialEq {}
impl<T: Clone + Num + Neg<Output = T> + PartialEq> Scalar for T {}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
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

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let sub = f.clone() * m[(r, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// A basis of `{x : Ax = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.cols];
                x[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    /// All solutions of `Ax = b` as a particular solution plus a nullspace
    /// basis, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Solution<F>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(Solution { particular: x, kernel: self.nullspace() })
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// `(AᵀA)⁻¹Aᵀ`, defined when `A` has full column rank.
    pub fn left_inverse(&self) -> Option<Self> {
        let at = self.transpose();
        at.mul(self).inverse().map(|g| g.mul(&at))
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Affine solution set `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

impl<F: Scalar> Solution<F> {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }

    /// The member of the solution set closest to the origin in the standard
    /// inner product.  Projecting the particular solution off the kernel
    /// needs a solve against the kernel's Gram matrix.
    pub fn min_norm(&self) -> Vec<F> {
        if self.kernel.is_empty() {
            return self.particular.clone();
        }
        let k = self.kernel.len();
        let dot = |a: &[F], b: &[F]| a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        let mut gram = Matrix::zeros(k, k);
        let mut rhs = vec![F::zero(); k];
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = dot(&self.kernel[i], &self.kernel[j]);
            }
            rhs[i] = -dot(&self.kernel[i], &self.particular);
        }
        let c = gram.inverse().expect("kernel basis is linearly independent").mul_vec(&rhs);
        let mut x = self.particular.clone();
        for (ci, v) in c.iter().zip(&self.kernel) {
            for (xj, vj) in x.iter_mut().zip(v) {
                *xj = xj.clone() + ci.clone() * vj.clone();
            }
        }
        x
    }
}

/// Fraction-free determinant over an integral domain.
///
/// Every intermediate division is exact, so this works for `BigInt`, `i64`
/// (barring overflow) and polynomial-like rings with exact division.
pub fn bareiss_det<T: Clone + Num + Neg<Output = T> + PartialEq>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return T::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator(xs: &[Q]) -> BigInt {
    use num_integer::Integer;
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
