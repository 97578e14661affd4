use std::fmt;

use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
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
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from explicit rows; `cols` is needed to give empty
    /// row sets a width.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// In-place reduced row echelon form over the first `pivot_cols` columns.
/// Returns the pivot column of each nonzero row, in order.
fn rref<T: Scalar>(m: &mut [Vec<T>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = d.clone() - factor.clone() * s.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut rows = m.row_vecs();
    rref(&mut rows, m.cols()).len()
}

/// Basis of `{x : m x = 0}`.
pub fn null_space<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut rows = m.row_vecs();
    let pivots = rref(&mut rows, m.cols());
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); m.cols()];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Exact solution of `a x = b`.
///
/// `Ok(None)` when the system is inconsistent or its solution is not unique.
/// Overdetermined systems are accepted as long as they are consistent.
pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows, right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug: Vec<Vec<T>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    // a nonzero right-hand side below the pivot rows means inconsistency
    if aug[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
        return Ok(None);
    }
    if pivots.len() < n {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| aug[i][n].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rational64> {
        let c = rows[0].len();
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rational64::from).collect())
                .collect(),
            c,
        )
        .unwrap()
    }

    #[test]
    fn identity_system() {
        let x = solve_linear(&Matrix::identity(2), &[r(1, 2), r(1, 3)]).unwrap();
        assert_eq!(x, Some(vec![r(1, 2), r(1, 3)]));
    }

    #[test]
    fn singular_system_has_no_unique_solution() {
        let a = mat(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_linear(&a, &[r(1, 1), r(1, 1)]).unwrap(), None);
    }

    #[test]
    fn hand_elimination() {
        let a = mat(vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(solve_linear(&a, &[r(1, 1), r(0, 1)]).unwrap(), Some(vec![r(1, 2), r(1, 2)]));
    }

    #[test]
    fn overdetermined_consistent_and_inconsistent() {
        let a = mat(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(
            solve_linear(&a, &[r(1, 1), r(2, 1), r(3, 1)]).unwrap(),
            Some(vec![r(1, 1), r(2, 1)])
        );
        assert_eq!(solve_linear(&a, &[r(1, 1), r(2, 1), r(4, 1)]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        let a = mat(vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(solve_linear(&a, &[r(1, 1)]), Err(Error::Dimension(_))));
        assert!(a.mul_vec(&[r(1, 1)]).is_err());
        assert!(Matrix::from_rows(vec![vec![r(1, 1)], vec![]], 1).is_err());
    }

    #[test]
    fn rank_and_null_space() {
        let a = mat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = null_space(&a);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(|v| *v == r(0, 1)));
    }
}
