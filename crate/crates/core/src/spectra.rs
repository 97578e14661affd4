//! Ideals, maximal spectra, radicals, quotients, the star map and states.
//!
//! Finite algebras are handled by exhaustive computation on their tables.
//! Chang's algebra has exactly three ideals, `{0} ⊂ Rad ⊂ C`, and is handled
//! symbolically. `[0,1]` and `[0,1]^n` are supported through their coordinate
//! maximal ideals so that maps into them can be dualized.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{barycentric, rat};
use crate::mv::{to_table, Algebra, ChangElem, Elem, FiniteTable};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangIdeal {
    Zero,
    /// All finite multiples of ε.
    Radical,
    Whole,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    /// Carrier indices of a finite algebra.
    Finite(BTreeSet<usize>),
    Chang(ChangIdeal),
    /// Elements of `[0,1]^n` (or `[0,1]`) vanishing at the given coordinate.
    Coordinate(usize),
    /// `{0}` of an algebra without a finite carrier.
    Zero,
}

enum Kind {
    Finite(FiniteTable),
    Chang,
    /// `[0,1]` (arity `None`) or `[0,1]^n`.
    Coords(Option<usize>),
}

fn kind(alg: &Algebra) -> Result<Kind> {
    if alg.size().is_some() {
        return Ok(Kind::Finite(to_table(alg)?));
    }
    match alg {
        Algebra::Chang => Ok(Kind::Chang),
        Algebra::UnitInterval => Ok(Kind::Coords(None)),
        Algebra::Product(base, n) if **base == Algebra::UnitInterval => Ok(Kind::Coords(Some(*n))),
        _ => Err(Error::Unsupported {
            algebra: alg.to_string(),
            what: "spectral computations".into(),
        }),
    }
}

fn coordinate(x: &Elem, i: usize) -> Result<Rat> {
    let c = match x {
        Elem::Tuple(xs) => xs.get(i),
        e => Some(e),
    };
    c.and_then(Elem::as_rat)
        .cloned()
        .ok_or_else(|| Error::Internal(format!("{x} has no coordinate {i}")))
}

impl Ideal {
    pub fn contains(&self, alg: &Algebra, x: &Elem) -> Result<bool> {
        alg.check(x)?;
        Ok(match self {
            Ideal::Finite(m) => m.contains(&alg.index_of(x)?),
            Ideal::Chang(c) => match (c, x) {
                (ChangIdeal::Whole, _) => true,
                (ChangIdeal::Radical, Elem::Chang(ChangElem::Fin(_))) => true,
                (ChangIdeal::Zero, Elem::Chang(ChangElem::Fin(0))) => true,
                _ => false,
            },
            Ideal::Coordinate(i) => coordinate(x, *i)?.is_zero(),
            Ideal::Zero => *x == alg.zero(),
        })
    }

    pub fn is_zero_ideal(&self, alg: &Algebra) -> bool {
        match self {
            Ideal::Finite(m) => m.len() == 1 && alg.index_of(&alg.zero()).is_ok_and(|z| m.contains(&z)),
            Ideal::Chang(c) => *c == ChangIdeal::Zero,
            Ideal::Coordinate(_) => false,
            Ideal::Zero => true,
        }
    }

    /// Human-readable description: member list, or a symbolic name.
    pub fn describe(&self, alg: &Algebra) -> String {
        match self {
            Ideal::Finite(m) => match alg.carrier() {
                Ok(c) => {
                    let names: Vec<String> = m.iter().map(|&i| c[i].to_string()).collect();
                    format!("{{{}}}", names.join(", "))
                }
                Err(_) => format!("{m:?}"),
            },
            Ideal::Chang(ChangIdeal::Zero) | Ideal::Zero => "{0}".into(),
            Ideal::Chang(ChangIdeal::Radical) => "rad".into(),
            Ideal::Chang(ChangIdeal::Whole) => "whole".into(),
            Ideal::Coordinate(i) => format!("ker{i}"),
        }
    }
}

fn principal(t: &FiniteTable, s: usize) -> BTreeSet<usize> {
    let mut m = s;
    loop {
        let next = t.oplus(m, s);
        if next == m {
            break;
        }
        m = next;
    }
    (0..t.len()).filter(|&x| t.leq(x, m)).collect()
}

fn is_ideal_set(t: &FiniteTable, members: &BTreeSet<usize>) -> bool {
    members.contains(&t.zero())
        && members
            .iter()
            .all(|&a| members.iter().all(|&b| members.contains(&t.oplus(a, b))))
        && members
            .iter()
            .all(|&a| (0..t.len()).all(|b| !t.leq(b, a) || members.contains(&b)))
}

/// The smallest ideal containing `gens`.
pub fn ideal_closure(alg: &Algebra, gens: &[Elem]) -> Result<Ideal> {
    for g in gens {
        alg.check(g)?;
    }
    match kind(alg)? {
        Kind::Finite(t) => {
            let mut s = t.zero();
            for g in gens {
                s = t.oplus(s, alg.index_of(g)?);
            }
            Ok(Ideal::Finite(principal(&t, s)))
        }
        Kind::Chang => {
            let c = if gens.iter().any(|g| matches!(g, Elem::Chang(ChangElem::Coinf(_)))) {
                ChangIdeal::Whole
            } else if gens.iter().any(|g| *g != alg.zero()) {
                ChangIdeal::Radical
            } else {
                ChangIdeal::Zero
            };
            Ok(Ideal::Chang(c))
        }
        Kind::Coords(_) => Err(Error::Unsupported {
            algebra: alg.to_string(),
            what: "ideal closure".into(),
        }),
    }
}

/// Checks that a finite member set is an ideal.
pub fn finite_ideal(alg: &Algebra, members: &[Elem]) -> Result<Ideal> {
    let t = to_table(alg)?;
    let set = members.iter().map(|x| alg.index_of(x)).collect::<Result<BTreeSet<_>>>()?;
    if !is_ideal_set(&t, &set) {
        return Err(Error::NotIdeal(Ideal::Finite(set).describe(alg)));
    }
    Ok(Ideal::Finite(set))
}

/// Every ideal; finite algebras have only principal ones.
pub fn all_ideals(alg: &Algebra) -> Result<Vec<Ideal>> {
    match kind(alg)? {
        Kind::Finite(t) => {
            let set: BTreeSet<BTreeSet<usize>> = (0..t.len()).map(|s| principal(&t, s)).collect();
            Ok(set.into_iter().map(Ideal::Finite).collect())
        }
        Kind::Chang => Ok(vec![ChangIdeal::Zero, ChangIdeal::Radical, ChangIdeal::Whole]
            .into_iter()
            .map(Ideal::Chang)
            .collect()),
        Kind::Coords(_) => Err(Error::Unsupported {
            algebra: alg.to_string(),
            what: "ideal enumeration".into(),
        }),
    }
}

pub fn maximal_ideals(alg: &Algebra) -> Result<Vec<Ideal>> {
    match kind(alg)? {
        Kind::Finite(t) => {
            let proper: Vec<BTreeSet<usize>> = all_ideals(alg)?
                .into_iter()
                .filter_map(|i| match i {
                    Ideal::Finite(m) if !m.contains(&t.one()) => Some(m),
                    _ => None,
                })
                .collect();
            Ok(proper
                .iter()
                .filter(|m| !proper.iter().any(|o| o.len() > m.len() && m.is_subset(o)))
                .cloned()
                .map(Ideal::Finite)
                .collect())
        }
        Kind::Chang => Ok(vec![Ideal::Chang(ChangIdeal::Radical)]),
        Kind::Coords(n) => Ok((0..n.unwrap_or(1)).map(Ideal::Coordinate).collect()),
    }
}

/// A maximal ideal with its Hölder embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPoint {
    pub ideal: Ideal,
    /// `k` when the quotient is the chain `Ł_k`; `None` when it is `[0,1] ∩ ℚ`.
    pub chain: Option<u32>,
    /// Star values over the carrier, for finite algebras.
    star: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSpace {
    pub points: Vec<MaxPoint>,
}

fn class_ids(t: &FiniteTable, m: &BTreeSet<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut ids = Vec::with_capacity(t.len());
    for x in 0..t.len() {
        match reps.iter().position(|&r| m.contains(&t.dist(x, r))) {
            Some(c) => ids.push(c),
            None => {
                ids.push(reps.len());
                reps.push(x);
            }
        }
    }
    (ids, reps)
}

pub fn max_space(alg: &Algebra) -> Result<MaxSpace> {
    let maxes = maximal_ideals(alg)?;
    let points = match kind(alg)? {
        Kind::Finite(t) => maxes
            .into_iter()
            .map(|ideal| {
                let Ideal::Finite(m) = &ideal else { unreachable!() };
                let (ids, reps) = class_ids(&t, m);
                let k = reps.len() - 1;
                // rank of a class: how many classes lie strictly below it
                let below = |a: usize, b: usize| a != b && m.contains(&t.ominus(reps[a], reps[b]));
                let ranks: Vec<usize> = (0..reps.len())
                    .map(|c| (0..reps.len()).filter(|&d| below(d, c)).count())
                    .collect();
                let distinct: BTreeSet<usize> = ranks.iter().copied().collect();
                if distinct.len() != reps.len() {
                    return Err(Error::Internal("quotient by a maximal ideal is not a chain".into()));
                }
                let star = ids.iter().map(|&c| rat(ranks[c] as i64, k as i64)).collect();
                Ok(MaxPoint {
                    ideal,
                    chain: Some(k as u32),
                    star,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Kind::Chang => vec![MaxPoint {
            ideal: Ideal::Chang(ChangIdeal::Radical),
            chain: Some(1),
            star: Vec::new(),
        }],
        Kind::Coords(_) => maxes
            .into_iter()
            .map(|ideal| MaxPoint {
                ideal,
                chain: None,
                star: Vec::new(),
            })
            .collect(),
    };
    Ok(MaxSpace { points })
}

impl MaxSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `a*`, the values `h_m(a/m)` over the points.
    pub fn star(&self, alg: &Algebra, a: &Elem) -> Result<Vec<Rat>> {
        alg.check(a)?;
        self.points
            .iter()
            .map(|p| match (&p.ideal, a) {
                (Ideal::Finite(_), _) => Ok(p.star[alg.index_of(a)?].clone()),
                (Ideal::Chang(_), Elem::Chang(c)) => Ok(chang_state(c)),
                (Ideal::Coordinate(i), _) => coordinate(a, *i),
                _ => Err(Error::Internal(format!("no star value for {a}"))),
            })
            .collect()
    }
}

pub fn star(alg: &Algebra, a: &Elem) -> Result<Vec<Rat>> {
    max_space(alg)?.star(alg, a)
}

pub fn radical(alg: &Algebra) -> Result<Ideal> {
    match kind(alg)? {
        Kind::Finite(t) => {
            let mut acc: BTreeSet<usize> = (0..t.len()).collect();
            for m in maximal_ideals(alg)? {
                if let Ideal::Finite(m) = m {
                    acc = acc.intersection(&m).copied().collect();
                }
            }
            Ok(Ideal::Finite(acc))
        }
        Kind::Chang => Ok(Ideal::Chang(ChangIdeal::Radical)),
        Kind::Coords(_) => Ok(Ideal::Zero),
    }
}

pub fn is_semisimple(alg: &Algebra) -> Result<bool> {
    Ok(radical(alg)?.is_zero_ideal(alg))
}

/// Two distinct elements with equal star images, if any.
pub fn star_collision(alg: &Algebra) -> Result<Option<(Elem, Elem)>> {
    match kind(alg)? {
        Kind::Finite(_) => {
            let space = max_space(alg)?;
            let c = alg.carrier()?;
            let stars = c.iter().map(|x| space.star(alg, x)).collect::<Result<Vec<_>>>()?;
            for i in 0..c.len() {
                for j in 0..i {
                    if stars[i] == stars[j] {
                        return Ok(Some((c[j].clone(), c[i].clone())));
                    }
                }
            }
            Ok(None)
        }
        Kind::Chang => Ok(Some((Elem::Chang(ChangElem::Fin(0)), Elem::Chang(ChangElem::Fin(1))))),
        Kind::Coords(_) => Ok(None),
    }
}

#[derive(Clone, Debug)]
enum Projection {
    Finite(Vec<usize>),
    ChangRadical,
    Constant,
}

/// `A/I` as a table, with the projection from `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: FiniteTable,
    projection: Projection,
}

impl Quotient {
    pub fn project(&self, alg: &Algebra, x: &Elem) -> Result<usize> {
        alg.check(x)?;
        Ok(match (&self.projection, x) {
            (Projection::Finite(p), _) => p[alg.index_of(x)?],
            (Projection::ChangRadical, Elem::Chang(ChangElem::Fin(_))) => 0,
            (Projection::ChangRadical, _) => 1,
            (Projection::Constant, _) => 0,
        })
    }
}

/// The quotient by the congruence `a ~ b` iff `(a⊖b) ⊕ (b⊖a) ∈ I`, with the
/// induced operations checked to be well defined.
pub fn quotient(alg: &Algebra, ideal: &Ideal) -> Result<Quotient> {
    let bool_table = |labels: [&str; 2]| {
        FiniteTable::new(
            labels.iter().map(|s| s.to_string()).collect(),
            vec![vec![0, 1], vec![1, 1]],
            vec![1, 0],
        )
    };
    match (kind(alg)?, ideal) {
        (Kind::Finite(t), Ideal::Finite(m)) => {
            if !is_ideal_set(&t, m) {
                return Err(Error::NotIdeal(ideal.describe(alg)));
            }
            let (ids, reps) = class_ids(&t, m);
            let mut oplus = vec![vec![0; reps.len()]; reps.len()];
            for a in 0..t.len() {
                for b in 0..t.len() {
                    let c = ids[t.oplus(a, b)];
                    if a == reps[ids[a]] && b == reps[ids[b]] {
                        oplus[ids[a]][ids[b]] = c;
                    }
                }
            }
            for a in 0..t.len() {
                for b in 0..t.len() {
                    if oplus[ids[a]][ids[b]] != ids[t.oplus(a, b)] {
                        return Err(Error::Internal("⊕ is not compatible with the congruence".into()));
                    }
                }
                if ids[t.neg(a)] != ids[t.neg(reps[ids[a]])] {
                    return Err(Error::Internal("¬ is not compatible with the congruence".into()));
                }
            }
            let neg = reps.iter().map(|&r| ids[t.neg(r)]).collect();
            let labels = reps.iter().map(|&r| format!("[{}]", t.labels()[r])).collect();
            Ok(Quotient {
                table: FiniteTable::new(labels, oplus, neg)?,
                projection: Projection::Finite(ids),
            })
        }
        (Kind::Chang, Ideal::Chang(ChangIdeal::Radical)) => Ok(Quotient {
            table: bool_table(["[0]", "[1]"])?,
            projection: Projection::ChangRadical,
        }),
        (Kind::Chang, Ideal::Chang(ChangIdeal::Whole)) => Ok(Quotient {
            table: FiniteTable::new(vec!["[0]".into()], vec![vec![0]], vec![0])?,
            projection: Projection::Constant,
        }),
        (Kind::Finite(_), _) | (Kind::Chang, Ideal::Finite(_) | Ideal::Coordinate(_) | Ideal::Zero) => {
            Err(Error::NotIdeal(ideal.describe(alg)))
        }
        _ => Err(Error::Unsupported {
            algebra: alg.to_string(),
            what: format!("quotient by {}", ideal.describe(alg)),
        }),
    }
}

/// A real-valued function on a finite carrier, listed in carrier order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateVec {
    #[serde(serialize_with = "ser_rats")]
    pub values: Vec<Rat>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl StateVec {
    pub fn new(values: Vec<Rat>) -> Self {
        StateVec { values }
    }

    pub fn at(&self, alg: &Algebra, a: &Elem) -> Result<Rat> {
        let i = alg.index_of(a)?;
        self.values
            .get(i)
            .cloned()
            .ok_or_else(|| Error::Dimension(format!("state has no value at {a}")))
    }
}

/// `s(1) = 1`, values in `[0,1]`, and `s(a⊕b) = s(a) + s(b)` whenever `a⊙b = 0`.
pub fn is_state(alg: &Algebra, s: &StateVec) -> Result<bool> {
    let t = to_table(alg)?;
    if s.values.len() != t.len() {
        return Err(Error::Dimension(format!(
            "state has {} values for {} elements",
            s.values.len(),
            t.len()
        )));
    }
    let v = &s.values;
    if v.iter().any(|x| x.is_negative() || *x > Rat::one()) || !v[t.one()].is_one() {
        return Ok(false);
    }
    for a in 0..t.len() {
        for b in 0..t.len() {
            if t.odot(a, b) == t.zero() && v[t.oplus(a, b)] != &v[a] + &v[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The extreme states `s_m(a) = a*(m)`, one per maximal ideal.
pub fn ext_states(alg: &Algebra) -> Result<Vec<StateVec>> {
    let space = max_space(alg)?;
    let c = alg.carrier()?;
    let mut out: Vec<StateVec> = (0..space.len()).map(|_| StateVec::new(Vec::with_capacity(c.len()))).collect();
    for x in &c {
        for (s, v) in out.iter_mut().zip(space.star(alg, x)?) {
            s.values.push(v);
        }
    }
    Ok(out)
}

/// `Σ λ_m s_m` for a probability vector over the maximal ideals.
pub fn state_from_measure(alg: &Algebra, weights: &[Rat]) -> Result<StateVec> {
    let ext = ext_states(alg)?;
    if weights.len() != ext.len() {
        return Err(Error::Dimension(format!(
            "{} weights for {} maximal ideals",
            weights.len(),
            ext.len()
        )));
    }
    if weights.iter().any(Signed::is_negative) || weights.iter().sum::<Rat>() != Rat::one() {
        return Err(Error::Input("weights must be nonnegative and sum to 1".into()));
    }
    let n = ext[0].values.len();
    let values = (0..n)
        .map(|i| weights.iter().zip(&ext).map(|(w, s)| w * &s.values[i]).sum())
        .collect();
    Ok(StateVec::new(values))
}

/// The unique measure on the maximal ideals whose barycenter is `s`.
pub fn state_decompose(alg: &Algebra, s: &StateVec) -> Result<Vec<Rat>> {
    let ext = ext_states(alg)?;
    let vertices: Vec<Vec<Rat>> = ext.into_iter().map(|e| e.values).collect();
    if s.values.len() != vertices[0].len() {
        return Err(Error::Dimension("state length does not match the carrier".into()));
    }
    barycentric(&vertices, &s.values).map_err(|e| match e {
        Error::OutsideHull => Error::Infeasible("not a convex combination of extreme states".into()),
        Error::DegenerateVertices => Error::Infeasible("extreme states are affinely dependent".into()),
        e => e,
    })
}

/// `â(s) = s(a)`.
pub fn affine_rep(alg: &Algebra, a: &Elem, s: &StateVec) -> Result<Rat> {
    s.at(alg, a)
}

/// The only state of Chang's algebra: infinitesimals go to 0, their
/// complements to 1.
pub fn chang_state(x: &ChangElem) -> Rat {
    match x {
        ChangElem::Fin(_) => Rat::zero(),
        ChangElem::Coinf(_) => Rat::one(),
    }
}

/// For a would-be value `q = s(ε) > 0`, a multiple `m` with `m·q > 1`, which
/// additivity along `ε, 2ε, …` rules out. `None` when `q = 0`.
pub fn chang_state_obstruction(q: &Rat) -> Option<u64> {
    if !q.is_positive() {
        return None;
    }
    let m = (Rat::one() / q).floor().to_integer().to_u64()? + 1;
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    fn boolean4() -> Algebra {
        Algebra::product(Algebra::Chain(1), 2)
    }

    #[test]
    fn ideals_match_subset_scan() {
        for alg in [
            Algebra::Chain(3),
            boolean4(),
            Algebra::product(Algebra::Chain(1), 3),
            Algebra::product(Algebra::Chain(2), 2),
        ] {
            let t = to_table(&alg).unwrap();
            let n = t.len();
            let mut brute = Vec::new();
            for mask in 0u32..(1 << n) {
                let s: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                if is_ideal_set(&t, &s) {
                    brute.push(Ideal::Finite(s));
                }
            }
            brute.sort();
            assert_eq!(all_ideals(&alg).unwrap(), brute, "{alg}");
        }
    }

    #[test]
    fn maximal_ideals_and_radicals() {
        assert_eq!(
            maximal_ideals(&Algebra::Chain(4)).unwrap(),
            vec![Ideal::Finite(BTreeSet::from([0]))]
        );
        assert_eq!(maximal_ideals(&boolean4()).unwrap().len(), 2);
        assert_eq!(
            maximal_ideals(&Algebra::Chang).unwrap(),
            vec![Ideal::Chang(ChangIdeal::Radical)]
        );
        assert!(is_semisimple(&Algebra::Chain(4)).unwrap());
        assert!(is_semisimple(&boolean4()).unwrap());
        assert!(!is_semisimple(&Algebra::Chang).unwrap());
        assert!(is_semisimple(&Algebra::product(Algebra::UnitInterval, 3)).unwrap());
        assert!(matches!(maximal_ideals(&Algebra::Free1), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn closures() {
        let c = Algebra::Chang;
        assert_eq!(
            ideal_closure(&c, &[Elem::Chang(ChangElem::Fin(3))]).unwrap(),
            Ideal::Chang(ChangIdeal::Radical)
        );
        assert_eq!(
            ideal_closure(&c, &[Elem::Chang(ChangElem::Coinf(3))]).unwrap(),
            Ideal::Chang(ChangIdeal::Whole)
        );
        let b = boolean4();
        let e1 = Elem::Tuple(vec![Elem::Rat(r(1, 1)), Elem::Rat(r(0, 1))]);
        let Ideal::Finite(m) = ideal_closure(&b, &[e1]).unwrap() else {
            panic!()
        };
        assert_eq!(m.len(), 2);
        assert_eq!(
            ideal_closure(&Algebra::Chain(3), &[Elem::Rat(r(1, 3))]).unwrap(),
            Ideal::Finite((0..4).collect())
        );
    }

    #[test]
    fn star_values() {
        let c4 = Algebra::Chain(4);
        assert_eq!(star(&c4, &Elem::Rat(r(3, 4))).unwrap(), vec![r(3, 4)]);
        assert_eq!(star(&Algebra::Chang, &Elem::Chang(ChangElem::Fin(5))).unwrap(), vec![r(0, 1)]);
        assert_eq!(
            star(&Algebra::Chang, &Elem::Chang(ChangElem::Coinf(2))).unwrap(),
            vec![r(1, 1)]
        );
        assert_eq!(star(&boolean4(), &boolean4().one()).unwrap(), vec![r(1, 1), r(1, 1)]);
    }

    #[test]
    fn star_is_a_homomorphism() {
        for alg in [Algebra::Chain(3), boolean4(), Algebra::product(Algebra::Chain(2), 2)] {
            let space = max_space(&alg).unwrap();
            let c = alg.carrier().unwrap();
            for x in &c {
                let nx: Vec<Rat> = space.star(&alg, x).unwrap().into_iter().map(|v| Rat::one() - v).collect();
                assert_eq!(space.star(&alg, &alg.neg(x).unwrap()).unwrap(), nx);
                for y in &c {
                    let s: Vec<Rat> = space
                        .star(&alg, x)
                        .unwrap()
                        .into_iter()
                        .zip(space.star(&alg, y).unwrap())
                        .map(|(a, b)| (a + b).min(Rat::one()))
                        .collect();
                    assert_eq!(space.star(&alg, &alg.oplus(x, y).unwrap()).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let c = Algebra::Chang;
        let q = quotient(&c, &Ideal::Chang(ChangIdeal::Radical)).unwrap();
        assert_eq!(q.table.len(), 2);
        assert_eq!(q.project(&c, &Elem::Chang(ChangElem::Fin(7))).unwrap(), 0);
        let b = boolean4();
        let maxes = maximal_ideals(&b).unwrap();
        assert_eq!(quotient(&b, &maxes[0]).unwrap().table.len(), 2);
        let zero = Ideal::Finite(BTreeSet::from([0]));
        assert_eq!(quotient(&Algebra::Chain(3), &zero).unwrap().table.len(), 4);
        let bogus = Ideal::Finite(BTreeSet::from([0, 2]));
        assert!(matches!(quotient(&Algebra::Chain(3), &bogus), Err(Error::NotIdeal(_))));
    }

    #[test]
    fn states() {
        let c3 = Algebra::Chain(3);
        let ext = ext_states(&c3).unwrap();
        assert_eq!(ext, vec![StateVec::new(vec![r(0, 1), r(1, 3), r(2, 3), r(1, 1)])]);
        assert!(is_state(&c3, &ext[0]).unwrap());
        assert!(!is_state(&c3, &StateVec::new(vec![r(0, 1), r(1, 2), r(2, 3), r(1, 1)])).unwrap());
        let s = StateVec::new(vec![r(0, 1), r(1, 3), r(2, 3), r(1, 1)]);
        // maximal ideals come ordered as the kernels of the first, then the second projection
        assert_eq!(state_decompose(&boolean4(), &s).unwrap(), vec![r(2, 3), r(1, 3)]);
        let bad = StateVec::new(vec![r(0, 1), r(1, 2), r(1, 2), r(1, 2)]);
        assert!(matches!(state_decompose(&boolean4(), &bad), Err(Error::Infeasible(_))));
    }

    #[test]
    fn only_extreme_states_preserve_joins() {
        let b = boolean4();
        let c = b.carrier().unwrap();
        let preserves = |s: &StateVec| {
            c.iter().all(|x| {
                c.iter()
                    .all(|y| s.at(&b, &b.join(x, y).unwrap()).unwrap() == s.at(&b, x).unwrap().max(s.at(&b, y).unwrap()))
            })
        };
        for s in ext_states(&b).unwrap() {
            assert!(preserves(&s));
            assert_eq!(affine_rep(&b, &c[1], &s).unwrap(), s.at(&b, &c[1]).unwrap());
        }
        let mixed = state_from_measure(&b, &[r(1, 2), r(1, 2)]).unwrap();
        assert!(!preserves(&mixed));
    }

    #[test]
    fn chang_state_is_forced() {
        assert_eq!(chang_state_obstruction(&r(0, 1)), None);
        assert_eq!(chang_state_obstruction(&r(1, 3)), Some(4));
        assert_eq!(chang_state_obstruction(&r(2, 5)), Some(3));
    }
}
