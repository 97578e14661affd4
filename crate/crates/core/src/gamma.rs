//! Good sequences and the enveloping unital ℓ-group of an MV-algebra.
//!
//! A positive group element is a good sequence `(a_1, a_2, …)` with
//! `a_i ⊕ a_{i+1} = a_i`, standing for `a_1 + a_2 + …`. Arbitrary elements are
//! formal differences of positive ones. Good sequences represent the positive
//! cone uniquely, so equality and order of differences reduce to comparing
//! cross sums entrywise.

use crate::error::{Error, Result};
use crate::mv::{find_isomorphism, to_table, Algebra, Elem, FiniteTable};

/// A good sequence with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodSeq {
    entries: Vec<Elem>,
}

fn trim(alg: &Algebra, mut entries: Vec<Elem>) -> Vec<Elem> {
    let zero = alg.zero();
    while entries.last() == Some(&zero) {
        entries.pop();
    }
    entries
}

impl GoodSeq {
    /// Validates membership and goodness, then trims.
    pub fn new(alg: &Algebra, entries: Vec<Elem>) -> Result<Self> {
        for x in &entries {
            alg.check(x)?;
        }
        let entries = trim(alg, entries);
        let s = GoodSeq { entries };
        if !s.is_good(alg)? {
            return Err(Error::NotGoodSequence(s.render()));
        }
        Ok(s)
    }

    pub fn zero() -> Self {
        GoodSeq { entries: Vec::new() }
    }

    /// `a₀ = (a, 0, 0, …)`
    pub fn singleton(alg: &Algebra, a: &Elem) -> Result<Self> {
        alg.check(a)?;
        Ok(GoodSeq {
            entries: trim(alg, vec![a.clone()]),
        })
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The `i`-th entry (0-based), zero past the end.
    pub fn entry(&self, alg: &Algebra, i: usize) -> Elem {
        self.entries.get(i).cloned().unwrap_or_else(|| alg.zero())
    }

    pub fn is_good(&self, alg: &Algebra) -> Result<bool> {
        for w in self.entries.windows(2) {
            if alg.oplus(&w[0], &w[1])? != w[0] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `a_i ⊙ a_{i+1} = a_{i+1}` along the sequence.
    pub fn odot_identity_holds(&self, alg: &Algebra) -> Result<bool> {
        for w in self.entries.windows(2) {
            if alg.odot(&w[0], &w[1])? != w[1] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// `pos − negp` in the enveloping group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub pos: GoodSeq,
    pub negp: GoodSeq,
}

impl GroupElem {
    pub fn new(pos: GoodSeq, negp: GoodSeq) -> Self {
        GroupElem { pos, negp }
    }

    pub fn positive(pos: GoodSeq) -> Self {
        GroupElem {
            pos,
            negp: GoodSeq::zero(),
        }
    }

    pub fn render(&self) -> String {
        format!("{} - {}", self.pos.render(), self.negp.render())
    }
}

/// The enveloping group of `alg`, with the order unit `u = 1₀`.
#[derive(Clone, Copy, Debug)]
pub struct EnvelopingGroup<'a> {
    alg: &'a Algebra,
}

impl<'a> EnvelopingGroup<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        EnvelopingGroup { alg }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem::positive(GoodSeq::zero())
    }

    pub fn unit(&self) -> GroupElem {
        GroupElem::positive(GoodSeq {
            entries: vec![self.alg.one()],
        })
    }

    pub fn embed(&self, a: &Elem) -> Result<GroupElem> {
        Ok(GroupElem::positive(GoodSeq::singleton(self.alg, a)?))
    }

    /// `a + b₀`: `(a_1⊕b, a_2⊕(a_1⊙b), …, a_n⊕(a_{n-1}⊙b), a_n⊙b)`.
    pub fn gs_add_single(&self, a: &GoodSeq, b: &Elem) -> Result<GoodSeq> {
        let alg = self.alg;
        alg.check(b)?;
        let n = a.entries.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let next = match (i, n) {
                (0, 0) => b.clone(),
                (0, _) => alg.oplus(&a.entries[0], b)?,
                (i, n) if i == n => alg.odot(&a.entries[n - 1], b)?,
                (i, _) => alg.oplus(&a.entries[i], &alg.odot(&a.entries[i - 1], b)?)?,
            };
            out.push(next);
        }
        self.finish(out)
    }

    fn finish(&self, entries: Vec<Elem>) -> Result<GoodSeq> {
        let s = GoodSeq {
            entries: trim(self.alg, entries),
        };
        if !s.is_good(self.alg)? {
            return Err(Error::Internal(format!("sum produced the bad sequence {}", s.render())));
        }
        Ok(s)
    }

    /// Sum of good sequences, adding the entries of `b` one at a time.
    pub fn gs_add(&self, a: &GoodSeq, b: &GoodSeq) -> Result<GoodSeq> {
        let mut acc = a.clone();
        for x in &b.entries {
            acc = self.gs_add_single(&acc, x)?;
        }
        Ok(acc)
    }

    /// The positive element `Σ f(a_i)₀`.
    pub fn gs_sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Result<GoodSeq> {
        let mut acc = GoodSeq::zero();
        for x in items {
            acc = self.gs_add_single(&acc, &x)?;
        }
        Ok(acc)
    }

    pub fn gs_leq(&self, a: &GoodSeq, b: &GoodSeq) -> Result<bool> {
        if a.len() > b.len() {
            return Ok(false);
        }
        for (x, y) in a.entries.iter().zip(&b.entries) {
            if !self.alg.leq(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn gs_lattice(&self, a: &GoodSeq, b: &GoodSeq, meet: bool) -> Result<GoodSeq> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (x, y) = (a.entry(self.alg, i), b.entry(self.alg, i));
            out.push(if meet {
                self.alg.meet(&x, &y)?
            } else {
                self.alg.join(&x, &y)?
            });
        }
        self.finish(out)
    }

    pub fn add(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        Ok(GroupElem::new(self.gs_add(&x.pos, &y.pos)?, self.gs_add(&x.negp, &y.negp)?))
    }

    pub fn neg(&self, x: &GroupElem) -> GroupElem {
        GroupElem::new(x.negp.clone(), x.pos.clone())
    }

    pub fn sub(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        self.add(x, &self.neg(y))
    }

    /// `(x.pos + y.negp, y.pos + x.negp)`; `x` relates to `y` as the first
    /// component relates to the second.
    fn cross(&self, x: &GroupElem, y: &GroupElem) -> Result<(GoodSeq, GoodSeq)> {
        Ok((self.gs_add(&x.pos, &y.negp)?, self.gs_add(&y.pos, &x.negp)?))
    }

    pub fn eq(&self, x: &GroupElem, y: &GroupElem) -> Result<bool> {
        let (l, r) = self.cross(x, y)?;
        Ok(l == r)
    }

    pub fn leq(&self, x: &GroupElem, y: &GroupElem) -> Result<bool> {
        let (l, r) = self.cross(x, y)?;
        self.gs_leq(&l, &r)
    }

    fn lattice(&self, x: &GroupElem, y: &GroupElem, meet: bool) -> Result<GroupElem> {
        let (l, r) = self.cross(x, y)?;
        Ok(GroupElem::new(self.gs_lattice(&l, &r, meet)?, self.gs_add(&x.negp, &y.negp)?))
    }

    pub fn meet(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        self.lattice(x, y, true)
    }

    pub fn join(&self, x: &GroupElem, y: &GroupElem) -> Result<GroupElem> {
        self.lattice(x, y, false)
    }

    /// Whether `x` lies in `[0, u]`.
    pub fn in_unit_interval(&self, x: &GroupElem) -> Result<bool> {
        Ok(self.leq(&self.zero(), x)? && self.leq(x, &self.unit())?)
    }
}

/// Every good sequence of length at most `max_len` over a finite algebra,
/// the empty one included.
pub fn good_sequences(alg: &Algebra, max_len: usize) -> Result<Vec<GoodSeq>> {
    let carrier = alg.carrier()?;
    let zero = alg.zero();
    let nonzero: Vec<&Elem> = carrier.iter().filter(|x| **x != zero).collect();
    let mut out = vec![GoodSeq::zero()];
    let mut frontier = vec![GoodSeq::zero()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &x in &nonzero {
                let ok = match s.entries.last() {
                    None => true,
                    Some(last) => alg.oplus(last, x)? == *last,
                };
                if ok {
                    let mut e = s.entries.clone();
                    e.push(x.clone());
                    next.push(GoodSeq { entries: e });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Representatives of the classes of `[0, u]`, found among the differences
/// of good sequences of length at most `max_len`.
pub fn gamma_interval(alg: &Algebra, max_len: usize) -> Result<Vec<GroupElem>> {
    let g = EnvelopingGroup::new(alg);
    let seqs = good_sequences(alg, max_len)?;
    let mut classes: Vec<GroupElem> = Vec::new();
    for p in &seqs {
        for n in &seqs {
            let x = GroupElem::new(p.clone(), n.clone());
            if !g.in_unit_interval(&x)? {
                continue;
            }
            let mut known = false;
            for c in &classes {
                if g.eq(c, &x)? {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(x);
            }
        }
    }
    Ok(classes)
}

fn class_of(g: &EnvelopingGroup<'_>, classes: &[GroupElem], x: &GroupElem) -> Result<usize> {
    for (i, c) in classes.iter().enumerate() {
        if g.eq(c, x)? {
            return Ok(i);
        }
    }
    Err(Error::Internal(format!(
        "{} falls outside the enumerated interval",
        x.render()
    )))
}

/// The MV-algebra induced on `[0, u]` by `x ⊕ y = (x + y) ∧ u` and `¬x = u − x`.
pub fn gamma_table(alg: &Algebra, classes: &[GroupElem]) -> Result<FiniteTable> {
    let g = EnvelopingGroup::new(alg);
    let u = g.unit();
    let mut oplus = Vec::with_capacity(classes.len());
    for x in classes {
        let mut row = Vec::with_capacity(classes.len());
        for y in classes {
            row.push(class_of(&g, classes, &g.meet(&g.add(x, y)?, &u)?)?);
        }
        oplus.push(row);
    }
    let neg = classes
        .iter()
        .map(|x| class_of(&g, classes, &g.sub(&u, x)?))
        .collect::<Result<Vec<_>>>()?;
    let labels = classes.iter().map(GroupElem::render).collect();
    FiniteTable::new(labels, oplus, neg)
}

/// For each carrier element `a`, the interval class of `a₀`.
pub fn embedding_classes(alg: &Algebra, classes: &[GroupElem]) -> Result<Vec<usize>> {
    let g = EnvelopingGroup::new(alg);
    alg.carrier()?.iter().map(|a| class_of(&g, classes, &g.embed(a)?)).collect()
}

/// An isomorphism from `alg` onto the interval algebra of its enveloping
/// group, if the search finds one.
pub fn gamma_roundtrip(alg: &Algebra, max_len: usize) -> Result<Option<Vec<usize>>> {
    let classes = gamma_interval(alg, max_len)?;
    let induced = gamma_table(alg, &classes)?;
    Ok(find_isomorphism(&to_table(alg)?, &induced))
}

/// A unital group homomorphism between enveloping groups determined by its
/// values on the MV-algebra: `P − N ↦ Σ f(p_i)₀ − Σ f(n_i)₀`.
pub struct GroupHom<'a> {
    domain: &'a Algebra,
    codomain: &'a Algebra,
    map: Box<dyn Fn(&Elem) -> Result<Elem> + 'a>,
}

impl<'a> GroupHom<'a> {
    /// No axioms are checked here; see [`lift_prob_map`].
    pub fn new(domain: &'a Algebra, codomain: &'a Algebra, map: impl Fn(&Elem) -> Result<Elem> + 'a) -> Self {
        GroupHom {
            domain,
            codomain,
            map: Box::new(map),
        }
    }

    pub fn domain(&self) -> EnvelopingGroup<'a> {
        EnvelopingGroup::new(self.domain)
    }

    pub fn codomain(&self) -> EnvelopingGroup<'a> {
        EnvelopingGroup::new(self.codomain)
    }

    fn lift_positive(&self, s: &GoodSeq) -> Result<GoodSeq> {
        let vals = s.entries.iter().map(|x| (self.map)(x)).collect::<Result<Vec<_>>>()?;
        self.codomain().gs_sum(vals)
    }

    pub fn apply(&self, x: &GroupElem) -> Result<GroupElem> {
        Ok(GroupElem::new(self.lift_positive(&x.pos)?, self.lift_positive(&x.negp)?))
    }
}

/// The group homomorphism `f_p` of a probability map with finite domain;
/// fails if `p` violates the axioms.
pub fn lift_prob_map(p: &crate::probmaps::ProbMap) -> Result<GroupHom<'_>> {
    let report = crate::probmaps::check_axioms(p, &crate::probmaps::CheckConfig::default())?;
    if let Some((name, w)) = report.first_failure() {
        let w: Vec<String> = w.iter().map(|e| e.to_string()).collect();
        return Err(Error::NotProbabilityMap(format!("{name} fails at {}", w.join(", "))));
    }
    Ok(GroupHom::new(p.domain(), p.codomain(), move |x| p.apply(x)))
}

/// `p(a⊕b) + p(a⊙b) = p(a) + p(b)` computed in the enveloping group of the
/// codomain.
pub fn additive_identity_holds(codomain: &Algebra, p_oplus: &Elem, p_odot: &Elem, pa: &Elem, pb: &Elem) -> Result<bool> {
    let g = EnvelopingGroup::new(codomain);
    let lhs = g.gs_sum([p_oplus.clone(), p_odot.clone()])?;
    let rhs = g.gs_sum([pa.clone(), pb.clone()])?;
    Ok(lhs == rhs)
}
