//! Probability maps between MV-algebras.
//!
//! A probability map `p: M -> N` satisfies
//! (P1) `p(a⊕b) = p(a) ⊕ p(b∧¬a)`, (P2) `p(¬a) = ¬p(a)` and (P3) `p(1) = 1`.
//! Maps are given by a table over a finite domain or by a built-in rule.
//! Constructors do not verify the axioms; use [`check_axioms`].

mod dual;
mod enumerate;
mod extreme;
mod stochastic;

pub use dual::{check_dual_theorem, dual, dual_roundtrip, from_dual, DualMap, DualState, DualTheorem};
pub use enumerate::{endpoint_fixing_functions, enumerate_prob_maps};
pub use extreme::{is_extreme, ExtremeVerdict};
pub use stochastic::{apply_stochastic, from_stochastic, stochastic_polytope, to_stochastic, StochMat};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gamma::EnvelopingGroup;
use crate::mv::{sample_elem, Algebra, ChangElem, Elem, FinCofSet, Verdict};
use crate::{seeded, PwlFn, Rat};

/// Built-in maps over domains without a finite table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapRule {
    Identity,
    /// `p(a)(x) = x·a(0) + (1-x)·a(1)` on one-variable McNaughton functions.
    ExamplePm,
    /// `p(a)(x) = a(1-x)`.
    Reflect,
    /// `A ↦ |A|ε` for finite `A`, `A ↦ 1 - |Ā|ε` for cofinite `A`.
    UniformFinCof,
    /// `a ↦` the constant function with value `a(t)`.
    ConstantHom(Rat),
    Stochastic(StochMat),
    /// `α·p + (1-α)·q`.
    Convex(Rat, Box<ProbMap>, Box<ProbMap>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    /// Values over the domain carrier, in carrier order.
    Table(Vec<Elem>),
    Rule(MapRule),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbMap {
    domain: Algebra,
    codomain: Algebra,
    body: Body,
}

/// The convex algebra that holds pointwise combinations of `alg`-values.
pub fn convex_hull_algebra(alg: &Algebra) -> Option<Algebra> {
    match alg {
        Algebra::UnitInterval | Algebra::Chain(_) => Some(Algebra::UnitInterval),
        Algebra::Product(base, n) => match convex_hull_algebra(base)? {
            Algebra::UnitInterval => Some(Algebra::product(Algebra::UnitInterval, *n)),
            _ => None,
        },
        Algebra::Free1 | Algebra::Pwl => Some(Algebra::Pwl),
        _ => None,
    }
}

fn convex_comb(alpha: &Rat, x: &Elem, y: &Elem) -> Result<Elem> {
    let beta = Rat::one() - alpha;
    Ok(match (x, y) {
        (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(alpha * a + &beta * b),
        (Elem::Tuple(a), Elem::Tuple(b)) if a.len() == b.len() => Elem::Tuple(
            a.iter()
                .zip(b)
                .map(|(p, q)| convex_comb(alpha, p, q))
                .collect::<Result<_>>()?,
        ),
        (Elem::Fn(f), Elem::Fn(g)) => Elem::Fn(PwlFn::scale_shift(alpha, f, &beta, g)?),
        _ => return Err(Error::Input(format!("cannot combine {x} and {y} convexly"))),
    })
}

impl ProbMap {
    /// A table map over a finite domain.
    pub fn table(domain: Algebra, codomain: Algebra, values: Vec<Elem>) -> Result<Self> {
        let n = domain.size().ok_or_else(|| Error::NotFinite {
            algebra: domain.to_string(),
        })?;
        if values.len() != n {
            return Err(Error::Dimension(format!(
                "table has {} entries for {n} elements",
                values.len()
            )));
        }
        for v in &values {
            codomain.check(v)?;
        }
        Ok(ProbMap {
            domain,
            codomain,
            body: Body::Table(values),
        })
    }

    pub fn identity(alg: Algebra) -> Self {
        ProbMap {
            domain: alg.clone(),
            codomain: alg,
            body: Body::Rule(MapRule::Identity),
        }
    }

    pub fn example_pm() -> Self {
        ProbMap {
            domain: Algebra::Free1,
            codomain: Algebra::Free1,
            body: Body::Rule(MapRule::ExamplePm),
        }
    }

    pub fn reflect() -> Self {
        ProbMap {
            domain: Algebra::Free1,
            codomain: Algebra::Free1,
            body: Body::Rule(MapRule::Reflect),
        }
    }

    pub fn uniform_fincof() -> Self {
        ProbMap {
            domain: Algebra::FinCof,
            codomain: Algebra::Chang,
            body: Body::Rule(MapRule::UniformFinCof),
        }
    }

    /// `p_h` for `h` the evaluation at `t`, into the continuous PWL functions.
    pub fn constant_hom(t: Rat) -> Result<Self> {
        if t < Rat::zero() || t > Rat::one() {
            return Err(Error::OutOfRange(format!("evaluation point {t} is outside [0,1]")));
        }
        Ok(ProbMap {
            domain: Algebra::Free1,
            codomain: Algebra::Pwl,
            body: Body::Rule(MapRule::ConstantHom(t)),
        })
    }

    /// `α·p + (1-α)·q`, landing in the convex hull algebra of the codomain.
    pub fn convex(alpha: Rat, p: &ProbMap, q: &ProbMap) -> Result<Self> {
        if p.domain != q.domain || p.codomain != q.codomain {
            return Err(Error::Input("convex combination needs a shared domain and codomain".into()));
        }
        if alpha < Rat::zero() || alpha > Rat::one() {
            return Err(Error::OutOfRange(format!("weight {alpha} is outside [0,1]")));
        }
        let codomain = convex_hull_algebra(&p.codomain).ok_or_else(|| Error::Unsupported {
            algebra: p.codomain.to_string(),
            what: "convex combinations".into(),
        })?;
        let body = match (&p.body, &q.body) {
            (Body::Table(a), Body::Table(b)) => Body::Table(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| convex_comb(&alpha, x, y))
                    .collect::<Result<_>>()?,
            ),
            (Body::Rule(MapRule::Stochastic(s)), Body::Rule(MapRule::Stochastic(t))) => {
                Body::Rule(MapRule::Stochastic(StochMat::convex(&alpha, s, t)?))
            }
            _ => Body::Rule(MapRule::Convex(alpha, Box::new(p.clone()), Box::new(q.clone()))),
        };
        Ok(ProbMap {
            domain: p.domain.clone(),
            codomain,
            body,
        })
    }

    pub(crate) fn from_rule(domain: Algebra, codomain: Algebra, rule: MapRule) -> Self {
        ProbMap {
            domain,
            codomain,
            body: Body::Rule(rule),
        }
    }

    pub fn domain(&self) -> &Algebra {
        &self.domain
    }

    pub fn codomain(&self) -> &Algebra {
        &self.codomain
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.domain.check(x)?;
        match &self.body {
            Body::Table(t) => Ok(t[self.domain.index_of(x)?].clone()),
            Body::Rule(rule) => match (rule, x) {
                (MapRule::Identity, _) => Ok(x.clone()),
                (MapRule::ExamplePm, Elem::Fn(f)) => Ok(Elem::Fn(f.example_pm()?)),
                (MapRule::Reflect, Elem::Fn(f)) => Ok(Elem::Fn(f.reflect())),
                (MapRule::UniformFinCof, Elem::Set(s)) => Ok(Elem::Chang(match s {
                    FinCofSet::Finite(a) => ChangElem::Fin(a.len() as u64),
                    FinCofSet::Cofinite(a) => ChangElem::Coinf(a.len() as u64),
                })),
                (MapRule::ConstantHom(t), Elem::Fn(f)) => Ok(Elem::Fn(PwlFn::constant(f.eval(t)?)?)),
                (MapRule::Stochastic(s), _) => s.apply_elem(x),
                (MapRule::Convex(alpha, p, q), _) => convex_comb(alpha, &p.apply(x)?, &q.apply(x)?),
                _ => Err(Error::Internal(format!("rule {rule:?} applied to {x}"))),
            },
        }
    }

    /// Values over the domain carrier.
    pub fn tabulate(&self) -> Result<Vec<Elem>> {
        if let Body::Table(t) = &self.body {
            return Ok(t.clone());
        }
        self.domain.carrier()?.iter().map(|x| self.apply(x)).collect()
    }

    /// The same map as an explicit table.
    pub fn to_table_map(&self) -> Result<ProbMap> {
        ProbMap::table(self.domain.clone(), self.codomain.clone(), self.tabulate()?)
    }
}

/// Sampling parameters for checks over infinite domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 200, seed: 0 }
    }
}

/// A few fixed elements always tested on infinite domains, next to samples.
fn landmarks(alg: &Algebra) -> Vec<Elem> {
    let mut out = vec![alg.zero(), alg.one()];
    match alg {
        Algebra::UnitInterval => out.push(Elem::Rat(crate::exact::rat(1, 2))),
        Algebra::Chang => out.extend([Elem::Chang(ChangElem::Fin(1)), Elem::Chang(ChangElem::Coinf(1))]),
        Algebra::FinCof => out.extend([Elem::Set(FinCofSet::finite([0])), Elem::Set(FinCofSet::cofinite([0]))]),
        Algebra::Free1 | Algebra::Pwl => {
            let id = PwlFn::identity();
            out.extend([Elem::Fn(id.neg()), Elem::Fn(id)]);
        }
        Algebra::Product(base, n) if **base == Algebra::UnitInterval => {
            let unit = |j: usize| {
                Elem::Tuple(
                    (0..*n)
                        .map(|i| Elem::Rat(if i == j { Rat::one() } else { Rat::zero() }))
                        .collect(),
                )
            };
            out.extend((0..*n).map(unit));
        }
        _ => {}
    }
    out
}

/// Every pair of a finite domain; otherwise landmark pairs plus
/// `cfg.samples` seeded random pairs.
pub fn domain_pairs(alg: &Algebra, cfg: &CheckConfig) -> Result<Vec<(Elem, Elem)>> {
    let base = if alg.size().is_some() {
        alg.carrier()?
    } else {
        landmarks(alg)
    };
    let mut out: Vec<(Elem, Elem)> = base
        .iter()
        .flat_map(|a| base.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    if alg.size().is_none() {
        let mut rng = seeded(cfg.seed);
        for _ in 0..cfg.samples {
            out.push((sample_elem(alg, &mut rng)?, sample_elem(alg, &mut rng)?));
        }
    }
    Ok(out)
}

/// Verdicts for each axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub p1: Verdict,
    pub p2: Verdict,
    pub p3: Verdict,
    /// `p(a⊕b) = p(a) ⊕ p(b ⊖ (a⊙b))`, equivalent to P1.
    pub p1_prime: Verdict,
}

impl AxiomReport {
    /// P1, P2 and P3.
    pub fn holds(&self) -> bool {
        self.p1.holds() && self.p2.holds() && self.p3.holds()
    }

    pub fn first_failure(&self) -> Option<(&'static str, &[Elem])> {
        [("P1", &self.p1), ("P2", &self.p2), ("P3", &self.p3), ("P1'", &self.p1_prime)]
            .into_iter()
            .find_map(|(n, v)| v.witness().map(|w| (n, w)))
    }
}

fn first_fail<F>(pairs: &[(Elem, Elem)], mut bad: F) -> Result<Verdict>
where
    F: FnMut(&Elem, &Elem) -> Result<bool>,
{
    for (a, b) in pairs {
        if bad(a, b)? {
            return Ok(Verdict::Fails(vec![a.clone(), b.clone()]));
        }
    }
    Ok(Verdict::Holds)
}

fn first_fail_unary<F>(pairs: &[(Elem, Elem)], mut bad: F) -> Result<Verdict>
where
    F: FnMut(&Elem) -> Result<bool>,
{
    for (a, b) in pairs {
        for x in [a, b] {
            if bad(x)? {
                return Ok(Verdict::Fails(vec![x.clone()]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks the axioms on the given pairs.
pub fn check_axioms_on(p: &ProbMap, pairs: &[(Elem, Elem)]) -> Result<AxiomReport> {
    let (m, n) = (p.domain(), p.codomain());
    let p1 = first_fail(pairs, |a, b| {
        let rhs = n.oplus(&p.apply(a)?, &p.apply(&m.meet(b, &m.neg(a)?)?)?)?;
        Ok(p.apply(&m.oplus(a, b)?)? != rhs)
    })?;
    let p1_prime = first_fail(pairs, |a, b| {
        let rhs = n.oplus(&p.apply(a)?, &p.apply(&m.ominus(b, &m.odot(a, b)?)?)?)?;
        Ok(p.apply(&m.oplus(a, b)?)? != rhs)
    })?;
    let p2 = first_fail_unary(pairs, |a| Ok(p.apply(&m.neg(a)?)? != n.neg(&p.apply(a)?)?))?;
    let p3 = if p.apply(&m.one())? == n.one() {
        Verdict::Holds
    } else {
        Verdict::Fails(vec![m.one()])
    };
    Ok(AxiomReport { p1, p2, p3, p1_prime })
}

/// Exhaustive on finite domains, sampled otherwise.
pub fn check_axioms(p: &ProbMap, cfg: &CheckConfig) -> Result<AxiomReport> {
    check_axioms_on(p, &domain_pairs(p.domain(), cfg)?)
}

/// How sums in the enveloping group of the codomain are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Plain rational arithmetic; only for rational-valued codomains.
    Rational,
    /// Good-sequence arithmetic.
    GoodSequences,
}

/// The four equivalent conditions on a map with `p(0) = 0` and `p(1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Characterizations {
    /// P1–P3.
    pub axioms: bool,
    /// `p(a⊕b) = p(a) + p(b) − p(a⊙b)` in the enveloping group.
    pub group_identity: bool,
    /// `a⊙b = 0` implies `p(a⊕b) = p(a) ⊕ p(b)` and `p(a) ⊙ p(b) = 0`.
    pub split_char: bool,
    /// `a⊙b = 0` implies `p(a⊕b) = p(a) + p(b)` in the enveloping group.
    pub disjoint_additive: bool,
}

impl Characterizations {
    pub fn agree(&self) -> bool {
        let v = [self.axioms, self.group_identity, self.split_char, self.disjoint_additive];
        v.iter().all(|&b| b == v[0])
    }
}

fn rat_vector(x: &Elem) -> Option<Vec<Rat>> {
    match x {
        Elem::Rat(r) => Some(vec![r.clone()]),
        Elem::Tuple(xs) => xs.iter().map(|e| e.as_rat().cloned()).collect(),
        _ => None,
    }
}

fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Whether `x + y = z + w` in the enveloping group of `alg`.
fn sums_equal(alg: &Algebra, route: Route, x: &Elem, y: &Elem, z: &Elem, w: &Elem) -> Result<bool> {
    match route {
        Route::Rational => {
            let v = |e: &Elem| {
                rat_vector(e).ok_or_else(|| Error::Unsupported {
                    algebra: alg.to_string(),
                    what: "rational group arithmetic".into(),
                })
            };
            Ok(add_vec(&v(x)?, &v(y)?) == add_vec(&v(z)?, &v(w)?))
        }
        Route::GoodSequences => {
            let g = EnvelopingGroup::new(alg);
            Ok(g.gs_sum([x.clone(), y.clone()])? == g.gs_sum([z.clone(), w.clone()])?)
        }
    }
}

pub fn check_characterizations(p: &ProbMap, cfg: &CheckConfig) -> Result<Characterizations> {
    let route = if p.codomain().is_rational_valued() {
        Route::Rational
    } else {
        Route::GoodSequences
    };
    check_characterizations_via(p, cfg, route)
}

pub fn check_characterizations_via(p: &ProbMap, cfg: &CheckConfig, route: Route) -> Result<Characterizations> {
    let (m, n) = (p.domain(), p.codomain());
    if p.apply(&m.zero())? != n.zero() || p.apply(&m.one())? != n.one() {
        return Err(Error::Input("the characterizations assume p(0) = 0 and p(1) = 1".into()));
    }
    let pairs = domain_pairs(m, cfg)?;
    let axioms = check_axioms_on(p, &pairs)?.holds();
    let zero = n.zero();
    let (mut group_identity, mut split_char, mut disjoint_additive) = (true, true, true);
    for (a, b) in &pairs {
        let (pa, pb) = (p.apply(a)?, p.apply(b)?);
        let odot = m.odot(a, b)?;
        let p_oplus = p.apply(&m.oplus(a, b)?)?;
        let p_odot = p.apply(&odot)?;
        if group_identity && !sums_equal(n, route, &p_oplus, &p_odot, &pa, &pb)? {
            group_identity = false;
        }
        if odot == m.zero() {
            if split_char && (p_oplus != n.oplus(&pa, &pb)? || n.odot(&pa, &pb)? != zero) {
                split_char = false;
            }
            if disjoint_additive && !sums_equal(n, route, &p_oplus, &zero, &pa, &pb)? {
                disjoint_additive = false;
            }
        }
    }
    Ok(Characterizations {
        axioms,
        group_identity,
        split_char,
        disjoint_additive,
    })
}

/// Elementary consequences of the axioms:
/// monotonicity, and the bounds on `p(a⊕b)`, `p(a⊖b)`, `p(a⊙b)` with their
/// equality cases.
pub fn check_basic_bounds(p: &ProbMap, cfg: &CheckConfig) -> Result<Verdict> {
    let (m, n) = (p.domain(), p.codomain());
    let pairs = domain_pairs(m, cfg)?;
    first_fail(&pairs, |a, b| {
        let (pa, pb) = (p.apply(a)?, p.apply(b)?);
        if m.leq(a, b)? && !n.leq(&pa, &pb)? {
            return Ok(true);
        }
        let disjoint = m.odot(a, b)? == m.zero();
        let p_oplus = p.apply(&m.oplus(a, b)?)?;
        let sum = n.oplus(&pa, &pb)?;
        if !n.leq(&p_oplus, &sum)? || (disjoint && p_oplus != sum) {
            return Ok(true);
        }
        let p_ominus = p.apply(&m.ominus(a, b)?)?;
        let diff = n.ominus(&pa, &pb)?;
        if !n.leq(&diff, &p_ominus)? || (m.leq(b, a)? && p_ominus != diff) {
            return Ok(true);
        }
        let prod = n.odot(&pa, &pb)?;
        if !n.leq(&prod, &p.apply(&m.odot(a, b)?)?)? || (disjoint && prod != n.zero()) {
            return Ok(true);
        }
        Ok(false)
    })
}

/// Preservation of `0`, `¬` and `⊕`.
pub fn is_mv_hom(p: &ProbMap, cfg: &CheckConfig) -> Result<Verdict> {
    let (m, n) = (p.domain(), p.codomain());
    if p.apply(&m.zero())? != n.zero() {
        return Ok(Verdict::Fails(vec![m.zero()]));
    }
    let pairs = domain_pairs(m, cfg)?;
    let v = first_fail_unary(&pairs, |a| Ok(p.apply(&m.neg(a)?)? != n.neg(&p.apply(a)?)?))?;
    if !v.holds() {
        return Ok(v);
    }
    first_fail(&pairs, |a, b| {
        Ok(p.apply(&m.oplus(a, b)?)? != n.oplus(&p.apply(a)?, &p.apply(b)?)?)
    })
}

/// Verdicts for the four internal-state conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalStateReport {
    /// `σ(0) = 0`
    pub zero: Verdict,
    /// `σ(¬a) = ¬σ(a)`
    pub negation: Verdict,
    /// `σ(a⊕b) = σ(a) ⊕ σ(b ⊖ (a⊙b))`
    pub additivity: Verdict,
    /// `σ(σ(a) ⊕ σ(b)) = σ(a) ⊕ σ(b)`
    pub idempotence: Verdict,
}

impl InternalStateReport {
    pub fn holds(&self) -> bool {
        self.zero.holds() && self.negation.holds() && self.additivity.holds() && self.idempotence.holds()
    }
}

pub fn is_internal_state(sigma: &ProbMap, cfg: &CheckConfig) -> Result<InternalStateReport> {
    let m = sigma.domain();
    if sigma.codomain() != m {
        return Err(Error::Input("an internal state maps an algebra into itself".into()));
    }
    let pairs = domain_pairs(m, cfg)?;
    let axioms = check_axioms_on(sigma, &pairs)?;
    let zero = if sigma.apply(&m.zero())? == m.zero() {
        Verdict::Holds
    } else {
        Verdict::Fails(vec![m.zero()])
    };
    let idempotence = first_fail(&pairs, |a, b| {
        let s = m.oplus(&sigma.apply(a)?, &sigma.apply(b)?)?;
        Ok(sigma.apply(&s)? != s)
    })?;
    Ok(InternalStateReport {
        zero,
        negation: axioms.p2,
        additivity: axioms.p1_prime,
        idempotence,
    })
}

pub fn uniform_fincof() -> ProbMap {
    ProbMap::uniform_fincof()
}

/// `½p + ½q`; the result is checked to satisfy the axioms.
pub fn midpoint(p: &ProbMap, q: &ProbMap) -> Result<ProbMap> {
    let r = ProbMap::convex(crate::exact::rat(1, 2), p, q)?;
    let report = check_axioms(&r, &CheckConfig::default())?;
    if let Some((name, w)) = report.first_failure() {
        let w: Vec<String> = w.iter().map(|e| e.to_string()).collect();
        return Err(Error::Internal(format!("midpoint violates {name} at {}", w.join(", "))));
    }
    Ok(r)
}
