use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::{MapRule, ProbMap};
use crate::error::{Error, Result};
use crate::exact::{rat, Polytope};
use crate::mv::{Algebra, Elem};
use crate::{Rat, RatMat, RatPolytope};

/// A nonnegative square matrix with unit row sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochMat {
    m: RatMat,
}

impl StochMat {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("stochastic matrix of order 0".into()));
        }
        let m = RatMat::from_rows(rows, n)?;
        for i in 0..n {
            if m.row(i).iter().any(Signed::is_negative) {
                return Err(Error::NonStochastic(format!("row {i} has a negative entry")));
            }
            let s: Rat = m.row(i).iter().sum();
            if !s.is_one() {
                return Err(Error::NonStochastic(format!("row {i} sums to {s}")));
            }
        }
        Ok(StochMat { m })
    }

    pub fn identity(n: usize) -> Self {
        StochMat { m: RatMat::identity(n) }
    }

    pub fn order(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.m.row_vecs()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        self.m.get(i, j)
    }

    /// Row-major entries, a point of `ℝ^{n²}`.
    pub fn flatten(&self) -> Vec<Rat> {
        self.rows().concat()
    }

    pub fn is_zero_one(&self) -> bool {
        self.flatten().iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn convex(alpha: &Rat, s: &StochMat, t: &StochMat) -> Result<Self> {
        if s.order() != t.order() {
            return Err(Error::Dimension("matrices of different orders".into()));
        }
        let beta = Rat::one() - alpha;
        let rows = s
            .rows()
            .iter()
            .zip(t.rows())
            .map(|(a, b)| a.iter().zip(&b).map(|(x, y)| alpha * x + &beta * y).collect())
            .collect();
        StochMat::new(rows)
    }

    pub(crate) fn apply_elem(&self, x: &Elem) -> Result<Elem> {
        let Elem::Tuple(xs) = x else {
            return Err(Error::Input(format!("{x} is not a vector")));
        };
        let a = xs
            .iter()
            .map(|e| {
                e.as_rat()
                    .cloned()
                    .ok_or_else(|| Error::Input(format!("{e} is not rational")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Elem::Tuple(apply_stochastic(self, &a)?.into_iter().map(Elem::Rat).collect()))
    }
}

/// `S·a` for `a ∈ [0,1]^n`.
pub fn apply_stochastic(s: &StochMat, a: &[Rat]) -> Result<Vec<Rat>> {
    if a.iter().any(|x| x.is_negative() || *x > Rat::one()) {
        return Err(Error::OutOfRange("argument leaves [0,1]^n".into()));
    }
    s.m.mul_vec(a)
}

/// The map `a ↦ S·a` on `[0,1]^n`.
pub fn from_stochastic(s: &StochMat) -> ProbMap {
    let alg = Algebra::product(Algebra::UnitInterval, s.order());
    ProbMap::from_rule(alg.clone(), alg, MapRule::Stochastic(s.clone()))
}

fn arity(alg: &Algebra) -> Option<usize> {
    match alg {
        Algebra::Product(base, n) if matches!(**base, Algebra::UnitInterval | Algebra::Chain(_)) => Some(*n),
        _ => None,
    }
}

fn rat_tuple(x: &Elem) -> Result<Vec<Rat>> {
    match x {
        Elem::Tuple(xs) => xs
            .iter()
            .map(|e| {
                e.as_rat()
                    .cloned()
                    .ok_or_else(|| Error::Input(format!("{e} is not rational")))
            })
            .collect(),
        _ => Err(Error::Input(format!("{x} is not a vector"))),
    }
}

/// The matrix with `p(e_j)` as column `j`, checked against `p` on the whole
/// carrier of a finite domain, or on the grid `{0, 1/2, 1}^n`.
pub fn to_stochastic(p: &ProbMap) -> Result<StochMat> {
    let n = arity(p.domain())
        .ok_or_else(|| Error::NotRepresentable(format!("domain {} is not a power of a chain or [0,1]", p.domain())))?;
    if arity(p.codomain()) != Some(n) {
        return Err(Error::Dimension(format!(
            "codomain {} does not match {}",
            p.codomain(),
            p.domain()
        )));
    }
    let unit = |j: usize| {
        Elem::Tuple(
            (0..n)
                .map(|i| Elem::Rat(if i == j { Rat::one() } else { Rat::zero() }))
                .collect(),
        )
    };
    let cols = (0..n).map(|j| rat_tuple(&p.apply(&unit(j))?)).collect::<Result<Vec<_>>>()?;
    let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    let s = StochMat::new(rows)?;
    let tests: Vec<Vec<Rat>> = if p.domain().size().is_some() {
        p.domain().carrier()?.iter().map(rat_tuple).collect::<Result<_>>()?
    } else {
        let grid = [Rat::zero(), rat(1, 2), Rat::one()];
        (0..n).map(|_| grid.iter().cloned()).multi_cartesian_product().collect()
    };
    for a in tests {
        let x = Elem::Tuple(a.iter().cloned().map(Elem::Rat).collect());
        if rat_tuple(&p.apply(&x)?)? != apply_stochastic(&s, &a)? {
            return Err(Error::NotRepresentable(format!("p is not linear at {x}")));
        }
    }
    Ok(s)
}

/// The stochastic matrices of order `n` as a polytope in `ℝ^{n²}`.
pub fn stochastic_polytope(n: usize) -> Result<RatPolytope> {
    let d = n * n;
    let unit = |k: usize, v: Rat| -> Vec<Rat> { (0..d).map(|i| if i == k { v.clone() } else { Rat::zero() }).collect() };
    let le = (0..d).map(|k| (unit(k, -Rat::one()), Rat::zero())).collect();
    let eq = (0..n)
        .map(|i| {
            (
                (0..d).map(|k| if k / n == i { Rat::one() } else { Rat::zero() }).collect(),
                Rat::one(),
            )
        })
        .collect();
    Polytope::from_constraints(d, le, eq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[(i64, i64)]]) -> StochMat {
        StochMat::new(rows.iter().map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            StochMat::new(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(0, 1), rat(1, 1)]]),
            Err(Error::NonStochastic(_))
        ));
        assert!(matches!(
            StochMat::new(vec![vec![rat(2, 1), rat(-1, 1)], vec![rat(0, 1), rat(1, 1)]]),
            Err(Error::NonStochastic(_))
        ));
        assert!(matches!(
            StochMat::new(vec![vec![rat(1, 1)], vec![rat(1, 1)]]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn application() {
        let s = m(&[&[(1, 2), (1, 2)], &[(0, 1), (1, 1)]]);
        assert_eq!(
            apply_stochastic(&s, &[rat(1, 1), rat(0, 1)]).unwrap(),
            vec![rat(1, 2), rat(0, 1)]
        );
        assert!(apply_stochastic(&s, &[rat(2, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn round_trips() {
        let s = m(&[&[(1, 3), (2, 3)], &[(1, 4), (3, 4)]]);
        assert_eq!(to_stochastic(&from_stochastic(&s)).unwrap(), s);
        let swap = m(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let p = from_stochastic(&swap);
        let x = Elem::Tuple(vec![Elem::Rat(rat(1, 5)), Elem::Rat(rat(3, 5))]);
        assert_eq!(
            p.apply(&x).unwrap(),
            Elem::Tuple(vec![Elem::Rat(rat(3, 5)), Elem::Rat(rat(1, 5))])
        );
        let id = ProbMap::identity(Algebra::product(Algebra::Chain(2), 2));
        assert_eq!(to_stochastic(&id).unwrap(), StochMat::identity(2));
    }

    #[test]
    fn nonlinear_maps_are_rejected() {
        // ⊕-projection (x, y) ↦ (x ⊕ y, x ⊕ y) agrees with a matrix on the unit vectors only
        let alg = Algebra::product(Algebra::Chain(1), 2);
        let c = alg.carrier().unwrap();
        let vals = c.iter().map(|x| {
            let Elem::Tuple(v) = x else { unreachable!() };
            let s = Algebra::Chain(1).oplus(&v[0], &v[1]).unwrap();
            Elem::Tuple(vec![s.clone(), s])
        });
        let p = ProbMap::table(alg.clone(), alg, vals.collect()).unwrap();
        assert!(to_stochastic(&p).is_err());
    }

    #[test]
    fn polytope_of_order_two() {
        let p = stochastic_polytope(2).unwrap();
        let v = p.vertices().unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|x| x.iter().all(|e| e.is_zero() || e.is_one())));
    }
}
