//! Dense matrices over an exact scalar ring.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = S::one();
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
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged row lengths".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diag(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(S::zero(), |acc, i| acc + self.at(i, i).clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * s.clone())
    }

    /// Matrix product. Skips zero entries of `self`, which makes products
    /// with projector-like sparse operands cheap without a sparse format.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = out.at(i, j).clone() + a.clone() * b.clone();
                    *out.at_mut(i, j) = t;
                }
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, rhs.rows, rhs.cols);
        Self::from_fn(r1 * r2, c1 * c2, |i, j| {
            self.at(i / r2, j / c2).clone() * rhs.at(i % r2, j % c2).clone()
        })
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.at(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc = acc + a.clone() * vj.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Quadratic form x^T M x.
    pub fn quadratic_form(&self, x: &[S]) -> S {
        let mx = self.matvec(x);
        x.iter()
            .zip(mx)
            .fold(S::zero(), |acc, (xi, mi)| if xi.is_zero() { acc } else { acc + xi.clone() * mi })
    }
}

/// Hilbert–Schmidt inner product Tr[A^T B] of equally shaped real matrices.
pub fn hs_inner<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<S> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Shape(format!(
            "hs_inner on {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut acc = S::zero();
    for (x, y) in a.data.iter().zip(&b.data) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    Ok(acc)
}

/// Solves `A x = b` by Gaussian elimination over the exact scalar field,
/// returning one solution of a consistent system (free variables are set to
/// zero). A singular but consistent system is fine; an inconsistent one is
/// an error.
pub fn solve_consistent<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>> {
    if a.rows != b.len() {
        return Err(Error::Shape(format!("system {}x{} with rhs {}", a.rows, a.cols, b.len())));
    }
    let (m, n) = (a.rows, a.cols);
    let mut aug: Vec<Vec<S>> = (0..m)
        .map(|i| {
            let mut row: Vec<S> = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let pv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = x.clone() / pv.clone();
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let upd = aug[i][j].clone() - f.clone() * aug[r][j].clone();
                    aug[i][j] = upd;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    for row in aug.iter().skip(r) {
        if !row[n].is_zero() {
            return Err(Error::Inconsistency("inconsistent linear system".into()));
        }
    }
    let mut x = vec![S::zero(); n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Ok(x)
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use crate::Mat;

    #[test]
    fn hs_inner_identity() {
        for k in 1..5 {
            let i = Mat::identity(k);
            assert_eq!(hs_inner(&i, &i).unwrap(), rat(k as i64, 1));
        }
    }

    #[test]
    fn hs_inner_shape_error() {
        let a = Mat::identity(2);
        let b = Mat::identity(3);
        assert!(matches!(hs_inner(&a, &b), Err(Error::Shape(_))));
    }

    #[test]
    fn matmul_and_kron() {
        let a = Mat::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(3, 1), rat(4, 1)],
        ])
        .unwrap();
        let prod = a.matmul(&a);
        assert_eq!(prod.at(0, 0), &rat(7, 1));
        assert_eq!(prod.at(1, 1), &rat(22, 1));
        let k = a.kron(&Mat::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.at(0, 0), &rat(1, 1));
        assert_eq!(k.at(1, 3), &rat(2, 1));
        assert_eq!(k.at(2, 0), &rat(3, 1));
    }

    #[test]
    fn solve_singular_consistent() {
        // rank-1 system: x + y = 2 duplicated
        let a = Mat::from_rows(vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(2, 1), rat(2, 1)],
        ])
        .unwrap();
        let x = solve_consistent(&a, &[rat(2, 1), rat(4, 1)]).unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), rat(2, 1));

        let bad = solve_consistent(&a, &[rat(2, 1), rat(5, 1)]);
        assert!(matches!(bad, Err(Error::Inconsistency(_))));
    }

    #[test]
    fn quadratic_form_matches_definition() {
        let m = Mat::from_rows(vec![
            vec![rat(2, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(2, 1)],
        ])
        .unwrap();
        let q = m.quadratic_form(&[rat(1, 1), rat(1, 1)]);
        assert_eq!(q, rat(2, 1));
    }
}
