use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{from_stochastic, is_extreme, is_mv_hom, to_stochastic, Body, CheckConfig, MapRule, ProbMap, StochMat};
use crate::error::{Error, Result};
use crate::mv::{to_table, Algebra, Elem};
use crate::spectra::{ext_states, is_semisimple, max_space, Ideal, StateVec};
use crate::Rat;

/// A state of the domain: a table over a finite carrier, or the linear
/// state `a ↦ Σ w_j a_j` of `[0,1]^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualState {
    Table(StateVec),
    Linear(Vec<Rat>),
}

/// `p′(n)(a) = p(a)*(n)` for each maximal ideal `n` of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    pub index: Vec<Ideal>,
    pub states: Vec<DualState>,
}

fn linear_domain(p: &ProbMap) -> bool {
    matches!(p.body(), Body::Rule(MapRule::Stochastic(_)))
        || matches!(p.domain(), Algebra::Product(b, _) if **b == Algebra::UnitInterval)
}

/// The family of domain states indexed by the maximal ideals of the
/// codomain. Non-semisimple codomains are accepted here; see [`from_dual`].
pub fn dual(p: &ProbMap) -> Result<DualMap> {
    let space = max_space(p.codomain())?;
    let index = space.points.iter().map(|pt| pt.ideal.clone()).collect();
    if linear_domain(p) {
        let s = to_stochastic(p)?;
        return Ok(DualMap {
            index,
            states: s.rows().into_iter().map(DualState::Linear).collect(),
        });
    }
    let carrier = p.domain().carrier()?;
    let mut cols: Vec<Vec<Rat>> = vec![Vec::with_capacity(carrier.len()); space.len()];
    for a in &carrier {
        for (c, v) in cols.iter_mut().zip(space.star(p.codomain(), &p.apply(a)?)?) {
            c.push(v);
        }
    }
    Ok(DualMap {
        index,
        states: cols.into_iter().map(|v| DualState::Table(StateVec::new(v))).collect(),
    })
}

/// The probability map whose dual is `f`; the codomain must be semisimple.
pub fn from_dual(domain: &Algebra, codomain: &Algebra, f: &DualMap) -> Result<ProbMap> {
    if !is_semisimple(codomain)? {
        return Err(Error::NotSemisimple);
    }
    let space = max_space(codomain)?;
    if f.states.len() != space.len() {
        return Err(Error::Dimension(format!(
            "{} states for {} maximal ideals",
            f.states.len(),
            space.len()
        )));
    }
    if f.states.iter().all(|s| matches!(s, DualState::Linear(_))) {
        let rows = f.states.iter().map(|s| match s {
            DualState::Linear(w) => w.clone(),
            DualState::Table(_) => unreachable!(),
        });
        let p = from_stochastic(&StochMat::new(rows.collect())?);
        if p.domain() != domain || p.codomain() != codomain {
            return Err(Error::Input("linear states need [0,1]^n on both sides".into()));
        }
        return Ok(p);
    }
    let tables = f
        .states
        .iter()
        .map(|s| match s {
            DualState::Table(t) => Ok(t),
            DualState::Linear(_) => Err(Error::Input("mixed state kinds".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = domain.size().ok_or_else(|| Error::NotFinite {
        algebra: domain.to_string(),
    })?;
    if tables.iter().any(|t| t.values.len() != n) {
        return Err(Error::Dimension("state length does not match the domain carrier".into()));
    }
    let lookup: Option<HashMap<Vec<Rat>, Elem>> = match codomain.carrier() {
        Ok(c) => Some(
            c.into_iter()
                .map(|y| Ok((space.star(codomain, &y)?, y)))
                .collect::<Result<_>>()?,
        ),
        Err(_) => None,
    };
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let v: Vec<Rat> = tables.iter().map(|t| t.values[i].clone()).collect();
        let y = match (&lookup, codomain) {
            (Some(map), _) => map.get(&v).cloned(),
            (None, Algebra::UnitInterval) => Some(Elem::Rat(v[0].clone())),
            (None, Algebra::Product(_, _)) => Some(Elem::Tuple(v.iter().cloned().map(Elem::Rat).collect())),
            _ => None,
        };
        let y = y.ok_or_else(|| Error::NotRepresentable(format!("no element of {codomain} has star values {v:?}")))?;
        codomain.check(&y)?;
        values.push(y);
    }
    ProbMap::table(domain.clone(), codomain.clone(), values)
}

fn same_map(p: &ProbMap, q: &ProbMap) -> Result<bool> {
    if p.domain() != q.domain() || p.codomain() != q.codomain() {
        return Ok(false);
    }
    if p.domain().size().is_some() {
        return Ok(p.tabulate()? == q.tabulate()?);
    }
    Ok(to_stochastic(p)? == to_stochastic(q)?)
}

/// `from_dual ∘ dual` and `dual ∘ from_dual` are identities at `p`.
pub fn dual_roundtrip(p: &ProbMap) -> Result<bool> {
    let f = dual(p)?;
    let q = from_dual(p.domain(), p.codomain(), &f)?;
    Ok(same_map(p, &q)? && dual(&q)? == f)
}

/// The four equivalent conditions on a probability map with semisimple
/// codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTheorem {
    pub extreme: bool,
    pub hom: bool,
    /// Every dual state is an extreme state.
    pub ext_states: bool,
    /// `f` with `p(a)*(n) = a*(f(n))`, as indices into the maximal ideals of
    /// the domain.
    pub factor: Option<Vec<usize>>,
}

impl DualTheorem {
    pub fn agree(&self) -> bool {
        let v = [self.extreme, self.hom, self.ext_states, self.factor.is_some()];
        v.iter().all(|&b| b == v[0])
    }
}

fn state_is_hom(alg: &Algebra, s: &DualState) -> Result<bool> {
    match s {
        DualState::Linear(w) => Ok(w.iter().filter(|x| x.is_one()).count() == 1 && w.iter().all(|x| x.is_zero() || x.is_one())),
        DualState::Table(t) => {
            let tab = to_table(alg)?;
            let v = &t.values;
            for a in 0..tab.len() {
                if v[tab.neg(a)] != Rat::one() - &v[a] {
                    return Ok(false);
                }
                for b in 0..tab.len() {
                    if v[tab.oplus(a, b)] != (&v[a] + &v[b]).min(Rat::one()) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

pub fn check_dual_theorem(p: &ProbMap, cfg: &CheckConfig) -> Result<DualTheorem> {
    let f = dual(p)?;
    let extreme = is_extreme(p, cfg)?.extreme();
    let hom = is_mv_hom(p, cfg)?.holds();
    let mut ext = true;
    for s in &f.states {
        ext &= state_is_hom(p.domain(), s)?;
    }
    let domain_ext: Vec<DualState> = if linear_domain(p) {
        let n = match p.domain() {
            Algebra::Product(_, n) => *n,
            _ => 1,
        };
        (0..n)
            .map(|m| DualState::Linear((0..n).map(|j| if j == m { Rat::one() } else { Rat::zero() }).collect()))
            .collect()
    } else {
        ext_states(p.domain())?.into_iter().map(DualState::Table).collect()
    };
    let factor = f.states.iter().map(|s| domain_ext.iter().position(|e| e == s)).collect();
    Ok(DualTheorem {
        extreme,
        hom,
        ext_states: ext,
        factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::mv::ChangElem;

    fn boolean4() -> Algebra {
        Algebra::product(Algebra::Chain(1), 2)
    }

    #[test]
    fn identity_dual_is_projections() {
        let b = boolean4();
        let p = ProbMap::identity(b.clone());
        let f = dual(&p).unwrap();
        let ext: Vec<DualState> = ext_states(&b).unwrap().into_iter().map(DualState::Table).collect();
        assert_eq!(f.states, ext);
        assert!(dual_roundtrip(&p).unwrap());
        let t = check_dual_theorem(&p, &CheckConfig::default()).unwrap();
        assert!(t.agree() && t.hom);
        assert_eq!(t.factor, Some(vec![0, 1]));
    }

    #[test]
    fn stochastic_duals_are_rows() {
        let s = StochMat::new(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(0, 1), rat(1, 1)]]).unwrap();
        let p = from_stochastic(&s);
        let f = dual(&p).unwrap();
        assert_eq!(f.states[0], DualState::Linear(vec![rat(1, 2), rat(1, 2)]));
        assert!(dual_roundtrip(&p).unwrap());
        let t = check_dual_theorem(&p, &CheckConfig::default()).unwrap();
        assert!(t.agree() && !t.hom);
        let swap = StochMat::new(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]).unwrap();
        let t = check_dual_theorem(&from_stochastic(&swap), &CheckConfig::default()).unwrap();
        assert!(t.agree() && t.hom);
        assert_eq!(t.factor, Some(vec![1, 0]));
    }

    #[test]
    fn chang_codomain_breaks_injectivity() {
        let b = boolean4();
        let fin = |n| Elem::Chang(ChangElem::Fin(n));
        let coinf = |n| Elem::Chang(ChangElem::Coinf(n));
        // carrier order: (0,0), (0,1), (1,0), (1,1)
        let p = ProbMap::table(b.clone(), Algebra::Chang, vec![fin(0), coinf(1), fin(1), coinf(0)]).unwrap();
        let q = ProbMap::table(b.clone(), Algebra::Chang, vec![fin(0), coinf(0), fin(0), coinf(0)]).unwrap();
        let cfg = CheckConfig::default();
        assert!(crate::probmaps::check_axioms(&p, &cfg).unwrap().holds());
        assert!(crate::probmaps::check_axioms(&q, &cfg).unwrap().holds());
        assert_ne!(p, q);
        assert_eq!(dual(&p).unwrap(), dual(&q).unwrap());
        assert_eq!(from_dual(&b, &Algebra::Chang, &dual(&p).unwrap()), Err(Error::NotSemisimple));
    }
}
