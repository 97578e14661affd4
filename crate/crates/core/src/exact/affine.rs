use super::matrix::{rank, solve_linear, Matrix};
use super::Scalar;
use crate::error::{Error, Result};

/// Barycentric coordinates of `query` with respect to affinely independent
/// `vertices`.
pub fn barycentric<T: Scalar>(vertices: &[Vec<T>], query: &[T]) -> Result<Vec<T>> {
    let Some(first) = vertices.first() else {
        return Err(Error::DegenerateVertices);
    };
    let d = first.len();
    if vertices.iter().any(|v| v.len() != d) || query.len() != d {
        return Err(Error::Dimension("vertices and query must share one dimension".into()));
    }
    // columns are the vertices lifted by a trailing 1
    let k = vertices.len();
    let mut a = Matrix::zeros(d + 1, k);
    for (j, v) in vertices.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            a.set(i, j, x.clone());
        }
        a.set(d, j, T::one());
    }
    if rank(&a) < k {
        return Err(Error::DegenerateVertices);
    }
    let mut rhs = query.to_vec();
    rhs.push(T::one());
    let lambda = solve_linear(&a, &rhs)?.ok_or(Error::OutsideHull)?;
    if lambda.iter().any(|l| *l < T::zero()) {
        return Err(Error::OutsideHull);
    }
    Ok(lambda)
}

/// Evaluates at `query` the unique affine map taking each vertex to its value.
pub fn affine_extend<T: Scalar>(vertex_values: &[(Vec<T>, Vec<T>)], query: &[T]) -> Result<Vec<T>> {
    let vertices: Vec<Vec<T>> = vertex_values.iter().map(|(v, _)| v.clone()).collect();
    let lambda = barycentric(&vertices, query)?;
    let width = vertex_values[0].1.len();
    if vertex_values.iter().any(|(_, val)| val.len() != width) {
        return Err(Error::Dimension("vertex values differ in length".into()));
    }
    let mut out = vec![T::zero(); width];
    for (l, (_, val)) in lambda.iter().zip(vertex_values) {
        for (o, x) in out.iter_mut().zip(val) {
            *o = o.clone() + l.clone() * x.clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn v(xs: &[(i64, i64)]) -> Vec<Rational64> {
        xs.iter().map(|&(n, d)| Rational64::new(n, d)).collect()
    }

    fn triangle() -> Vec<(Vec<Rational64>, Vec<Rational64>)> {
        vec![
            (v(&[(0, 1), (0, 1)]), v(&[(1, 1), (0, 1)])),
            (v(&[(1, 1), (0, 1)]), v(&[(0, 1), (2, 1)])),
            (v(&[(0, 1), (1, 1)]), v(&[(1, 2), (1, 2)])),
        ]
    }

    #[test]
    fn vertex_query_returns_its_value() {
        let t = triangle();
        for (x, val) in &t {
            assert_eq!(&affine_extend(&t, x).unwrap(), val);
        }
    }

    #[test]
    fn midpoint_of_edge() {
        let t = triangle();
        let got = affine_extend(&t, &v(&[(1, 2), (0, 1)])).unwrap();
        assert_eq!(got, v(&[(1, 2), (1, 1)]));
    }

    #[test]
    fn barycenter_averages_values() {
        // lambda = (1/3, 1/3, 1/3) solves the 3x3 lifted system by hand
        let t = triangle();
        let got = affine_extend(&t, &v(&[(1, 3), (1, 3)])).unwrap();
        assert_eq!(got, v(&[(1, 2), (5, 6)]));
    }

    #[test]
    fn outside_and_degenerate() {
        let t = triangle();
        assert_eq!(affine_extend(&t, &v(&[(1, 1), (1, 1)])), Err(Error::OutsideHull));
        let collinear = vec![
            (v(&[(0, 1), (0, 1)]), v(&[(0, 1)])),
            (v(&[(1, 1), (1, 1)]), v(&[(0, 1)])),
            (v(&[(2, 1), (2, 1)]), v(&[(0, 1)])),
        ];
        assert_eq!(
            affine_extend(&collinear, &v(&[(1, 1), (1, 1)])),
            Err(Error::DegenerateVertices)
        );
        // off the affine hull of a segment
        assert_eq!(
            barycentric(&[v(&[(0, 1), (0, 1)]), v(&[(1, 1), (0, 1)])], &v(&[(0, 1), (1, 1)])),
            Err(Error::OutsideHull)
        );
    }
}
