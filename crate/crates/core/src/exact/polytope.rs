use std::collections::BTreeSet;

use itertools::Itertools;

use super::matrix::{dot, null_space, rank, solve_linear, Matrix};
use super::Scalar;
use crate::error::{Error, Result};

/// The feasible set `{x : A x <= b}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polytope<T> {
    a: Matrix<T>,
    b: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for Polytope<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{x : {:?} x <= {:?}}}", self.a, self.b)
    }
}

impl<T: Scalar> Polytope<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::Dimension(format!(
                "{} constraint rows but {} bounds",
                a.rows(),
                b.len()
            )));
        }
        Ok(Polytope { a, b })
    }

    /// Builds the polytope from `<=` rows and `=` rows; each equality becomes
    /// a pair of opposite inequalities.
    pub fn from_constraints(dim: usize, le: Vec<(Vec<T>, T)>, eq: Vec<(Vec<T>, T)>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut b = Vec::new();
        for (r, v) in le {
            rows.push(r);
            b.push(v);
        }
        for (r, v) in eq {
            rows.push(r.iter().map(|x| -x.clone()).collect());
            b.push(-v.clone());
            rows.push(r);
            b.push(v);
        }
        Self::new(Matrix::from_rows(rows, dim)?, b)
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn constraints(&self) -> (&Matrix<T>, &[T]) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim() && (0..self.a.rows()).all(|i| dot(self.a.row(i), x) <= self.b[i])
    }

    /// Indices of the constraints that hold with equality at `x`.
    pub fn active_rows(&self, x: &[T]) -> Vec<usize> {
        (0..self.a.rows()).filter(|&i| dot(self.a.row(i), x) == self.b[i]).collect()
    }

    /// A feasible point is a vertex iff its active constraints have full rank.
    pub fn is_vertex(&self, x: &[T]) -> bool {
        self.contains(x) && rank(&self.a.select_rows(&self.active_rows(x))) == self.dim()
    }

    /// Fails with [`Error::Unbounded`] when the recession cone `{d : A d <= 0}`
    /// contains a nonzero direction.
    pub fn check_bounded(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Ok(());
        }
        if rank(&self.a) < d {
            return Err(Error::Unbounded);
        }
        // the cone is pointed; it is trivial iff it has no extreme ray, and
        // every extreme ray is cut out by d-1 independent tight rows
        for subset in (0..self.a.rows()).combinations(d - 1) {
            let sub = self.a.select_rows(&subset);
            let ns = null_space(&sub);
            if ns.len() != 1 {
                continue;
            }
            let ray = &ns[0];
            let neg: Vec<T> = ray.iter().map(|v| -v.clone()).collect();
            for dir in [ray, &neg] {
                if (0..self.a.rows()).all(|i| dot(self.a.row(i), dir) <= T::zero()) {
                    return Err(Error::Unbounded);
                }
            }
        }
        Ok(())
    }

    /// Exact vertex set, sorted and deduplicated.
    ///
    /// Brute force over all row subsets of size `dim`: solve the tight system,
    /// keep feasible unique solutions.
    pub fn vertices(&self) -> Result<Vec<Vec<T>>> {
        self.check_bounded()?;
        let d = self.dim();
        if d == 0 {
            return Ok(if self.b.iter().all(|v| *v >= T::zero()) {
                vec![vec![]]
            } else {
                vec![]
            });
        }
        let mut out = BTreeSet::new();
        for subset in (0..self.a.rows()).combinations(d) {
            let sub = self.a.select_rows(&subset);
            let rhs: Vec<T> = subset.iter().map(|&i| self.b[i].clone()).collect();
            if let Some(x) = solve_linear(&sub, &rhs)? {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

pub fn vertex_enumerate<T: Scalar>(p: &Polytope<T>) -> Result<Vec<Vec<T>>> {
    p.vertices()
}

/// Dimension of the affine hull of a finite point set (`-1` is reported as
/// `None` for the empty set).
pub fn affine_dimension<T: Scalar>(points: &[Vec<T>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    let diffs: Vec<Vec<T>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    Matrix::from_rows(diffs, first.len()).ok().map(|m| rank(&m))
}

/// Membership of `query` in the convex hull of `points`.
///
/// By Carathéodory it suffices to try affinely independent subsets of size at
/// most `dim + 1`, solving for barycentric coordinates in each. Exponential;
/// meant for small point sets.
pub fn in_convex_hull<T: Scalar>(points: &[Vec<T>], query: &[T]) -> bool {
    let Some(dim) = affine_dimension(points) else {
        return false;
    };
    for k in 1..=(dim + 1).min(points.len()) {
        for subset in (0..points.len()).combinations(k) {
            let verts: Vec<Vec<T>> = subset.iter().map(|&i| points[i].clone()).collect();
            if let Ok(l) = super::affine::barycentric(&verts, query) {
                debug_assert!(l.iter().all(|v| *v >= T::zero()));
                return true;
            }
        }
    }
    false
}
