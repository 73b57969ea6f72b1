//! Dense matrices over a [`Scalar`] field.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
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

    /// Builds a matrix from row vectors. `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_negligible())
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let slot: &mut F = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        out
    }

    /// Kronecker product; row `(i, k)` of the result is `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Matrix<F>) -> Matrix<F> {
        let (r1, c1) = self.shape();
        let (r2, c2) = rhs.shape();
        Matrix::from_fn(r1 * r2, c1 * c2, |i, j| {
            let (i1, i2) = (i / r2, i % r2);
            let (j1, j2) = (j / c2, j % c2);
            self[(i1, j1)].clone() * rhs[(i2, j2)].clone()
        })
    }

    /// Block-diagonal sum `[self 0; 0 rhs]`.
    pub fn block_diag(&self, rhs: &Matrix<F>) -> Matrix<F> {
        let (r1, c1) = self.shape();
        let (r2, c2) = rhs.shape();
        Matrix::from_fn(r1 + r2, c1 + c2, |i, j| {
            if i < r1 && j < c1 {
                self[(i, j)].clone()
            } else if i >= r1 && j >= c1 {
                rhs[(i - r1, j - c1)].clone()
            } else {
                F::zero()
            }
        })
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Rank by one-step fraction-free (Bareiss) elimination. The pivot in
    /// each column is the first non-negligible entry at or below the current row.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (rows, cols) = self.shape();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_negligible()) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            for i in r + 1..rows {
                let factor = a[i][c].clone();
                for j in c + 1..cols {
                    let v = (pivot.clone() * a[i][j].clone() - factor.clone() * a[r][j].clone())
                        / prev.clone();
                    a[i][j] = v;
                }
                a[i][c] = F::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::<F>::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_negligible())?;
            a.swap(c, p);
            inv.swap(c, p);
            let pivot = a[c][c].clone();
            for j in 0..n {
                a[c][j] = a[c][j].clone() / pivot.clone();
                inv[c][j] = inv[c][j].clone() / pivot.clone();
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
        Matrix::from_rows(inv, n)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::from_i64;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| from_i64(v)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn rank_basic() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).rank(), 2);
        assert_eq!(m(&[&[0, 0, 0]]).rank(), 0);
        assert_eq!(Matrix::<BigRational>::zeros(0, 5).rank(), 0);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
        assert_eq!(m(&[&[0, 2, 1], &[0, 4, 2], &[3, 0, 0]]).rank(), 2);
    }

    #[test]
    fn rank_over_floats_and_small_rationals() {
        let a = Matrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![0.5, 1.0]], 2).unwrap();
        assert_eq!(a.rank(), 1);
        let b = Matrix::<num_rational::Rational64>::identity(3);
        assert_eq!(b.rank(), 3);
    }

    #[test]
    fn kron_layout() {
        let a = m(&[&[1, 2]]);
        let b = m(&[&[1], &[3]]);
        assert_eq!(a.kron(&b), m(&[&[1, 2], &[3, 6]]));
        let e = Matrix::<BigRational>::zeros(0, 2);
        assert_eq!(a.kron(&e).shape(), (0, 4));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn block_diag_shape() {
        let a = m(&[&[1]]);
        let z = Matrix::<BigRational>::zeros(0, 1);
        let s = a.block_diag(&z);
        assert_eq!(s.shape(), (1, 2));
        assert_eq!(s, m(&[&[1, 0]]));
    }
}
