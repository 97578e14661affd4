use num_traits::{One, Zero};

use super::{is_mv_hom, to_stochastic, CheckConfig, MapRule, ProbMap};
use super::{stochastic_polytope, Body};
use crate::error::{Error, Result};
use crate::exact::Polytope;
use crate::mv::Algebra;
use crate::spectra::max_space;
use crate::Rat;

/// The two extremality verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremeVerdict {
    /// `p` is an MV-homomorphism.
    pub hom: bool,
    /// `p` is a vertex of the polytope of probability maps into `[0,1]^Y`;
    /// `None` when no finite-dimensional polytope is available.
    pub vertex: Option<bool>,
}

impl ExtremeVerdict {
    pub fn extreme(&self) -> bool {
        self.vertex.unwrap_or(self.hom)
    }
}

fn is_stochastic_shape(p: &ProbMap) -> bool {
    matches!(p.body(), Body::Rule(MapRule::Stochastic(_)))
        || matches!(p.domain(), Algebra::Product(b, _) if **b == Algebra::UnitInterval)
}

/// Vertex test in the polytope of additive normalized tables
/// `M -> [0,1]^Y`, where `Y` is the maximal spectrum of the codomain.
fn table_vertex(p: &ProbMap) -> Result<Option<bool>> {
    let (m, n) = (p.domain(), p.codomain());
    let Ok(space) = max_space(n) else { return Ok(None) };
    let carrier = m.carrier()?;
    let k = space.len();
    let dim = carrier.len() * k;
    let var = |a: usize, y: usize| a * k + y;
    let mut point = vec![Rat::zero(); dim];
    for (a, x) in carrier.iter().enumerate() {
        for (y, v) in space.star(n, &p.apply(x)?)?.into_iter().enumerate() {
            point[var(a, y)] = v;
        }
    }
    let basis = |entries: &[(usize, Rat)]| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); dim];
        for (i, v) in entries {
            row[*i] = row[*i].clone() + v.clone();
        }
        row
    };
    let (zero, one) = (m.index_of(&m.zero())?, m.index_of(&m.one())?);
    let mut le = Vec::new();
    let mut eq = Vec::new();
    for i in 0..dim {
        le.push((basis(&[(i, -Rat::one())]), Rat::zero()));
        le.push((basis(&[(i, Rat::one())]), Rat::one()));
    }
    for y in 0..k {
        eq.push((basis(&[(var(zero, y), Rat::one())]), Rat::zero()));
        eq.push((basis(&[(var(one, y), Rat::one())]), Rat::one()));
    }
    for a in 0..carrier.len() {
        for b in a..carrier.len() {
            if m.odot(&carrier[a], &carrier[b])? != m.zero() || a == zero || b == zero {
                continue;
            }
            let s = m.index_of(&m.oplus(&carrier[a], &carrier[b])?)?;
            for y in 0..k {
                let row = basis(&[(var(s, y), Rat::one()), (var(a, y), -Rat::one()), (var(b, y), -Rat::one())]);
                eq.push((row, Rat::zero()));
            }
        }
    }
    let poly = Polytope::from_constraints(dim, le, eq)?;
    Ok(Some(poly.is_vertex(&point)))
}

/// Extremality decided as an MV-homomorphism test and, independently, as a
/// polytope vertex test. The two must agree; a disagreement is reported as
/// an internal error.
pub fn is_extreme(p: &ProbMap, cfg: &CheckConfig) -> Result<ExtremeVerdict> {
    let hom = is_mv_hom(p, cfg)?.holds();
    let vertex = if is_stochastic_shape(p) {
        let s = to_stochastic(p)?;
        Some(stochastic_polytope(s.order())?.is_vertex(&s.flatten()))
    } else if p.domain().size().is_some() {
        table_vertex(p)?
    } else {
        None
    };
    if let Some(v) = vertex {
        if v != hom {
            return Err(Error::Internal(format!("homomorphism verdict {hom} but vertex verdict {v}")));
        }
    }
    Ok(ExtremeVerdict { hom, vertex })
}
