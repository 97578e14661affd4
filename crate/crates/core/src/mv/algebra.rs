use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::{ChangElem, Elem, FinCofSet};
use super::table::FiniteTable;
use crate::error::{Error, Result};
use crate::{PwlFn, Rat};

/// Elements above this size are never enumerated.
pub const MAX_CARRIER: usize = 1 << 16;

/// A concrete MV-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// `[0,1] ∩ ℚ` with truncated addition.
    UnitInterval,
    /// The Łukasiewicz chain `{0, 1/k, …, 1}`.
    Chain(u32),
    /// `base^arity` with componentwise operations.
    Product(Box<Algebra>, usize),
    Chang,
    FinCof,
    /// One-variable McNaughton functions.
    Free1,
    /// All continuous piecewise-linear `[0,1] -> [0,1]` with rational
    /// coefficients; a convex superalgebra of `Free1`.
    Pwl,
    Table(Arc<FiniteTable>),
}

impl Algebra {
    pub fn chain(k: u32) -> Self {
        Algebra::Chain(k)
    }

    pub fn product(base: Algebra, arity: usize) -> Self {
        Algebra::Product(Box::new(base), arity)
    }

    pub fn table(t: FiniteTable) -> Self {
        Algebra::Table(Arc::new(t))
    }

    fn mismatch(&self, x: &Elem) -> Error {
        Error::Mismatch {
            algebra: self.to_string(),
            elem: x.to_string(),
        }
    }

    /// Membership of `x` in the carrier.
    pub fn check(&self, x: &Elem) -> Result<()> {
        let ok = match (self, x) {
            (Algebra::UnitInterval, Elem::Rat(r)) => !r.is_negative() && *r <= Rat::one(),
            (Algebra::Chain(k), Elem::Rat(r)) => {
                *k > 0 && !r.is_negative() && *r <= Rat::one() && (BigInt::from(*k) % r.denom()).is_zero()
            }
            (Algebra::Product(base, n), Elem::Tuple(xs)) => {
                if xs.len() != *n {
                    return Err(self.mismatch(x));
                }
                for c in xs {
                    base.check(c)?;
                }
                true
            }
            (Algebra::Chang, Elem::Chang(_)) | (Algebra::FinCof, Elem::Set(_)) | (Algebra::Pwl, Elem::Fn(_)) => true,
            (Algebra::Free1, Elem::Fn(f)) => f.is_mcnaughton(),
            (Algebra::Table(t), Elem::Index(i)) => *i < t.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(x))
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Algebra::UnitInterval | Algebra::Chain(_) => Elem::Rat(Rat::zero()),
            Algebra::Product(base, n) => Elem::Tuple(vec![base.zero(); *n]),
            Algebra::Chang => Elem::Chang(ChangElem::Fin(0)),
            Algebra::FinCof => Elem::Set(FinCofSet::finite([])),
            Algebra::Free1 | Algebra::Pwl => Elem::Fn(PwlFn::zero()),
            Algebra::Table(t) => Elem::Index(t.zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.neg_raw(&self.zero())
    }

    fn oplus_raw(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Algebra::UnitInterval | Algebra::Chain(_), Elem::Rat(a), Elem::Rat(b)) => {
                let s = a + b;
                Elem::Rat(if s > Rat::one() { Rat::one() } else { s })
            }
            (Algebra::Product(base, _), Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(a.iter().zip(b).map(|(p, q)| base.oplus_raw(p, q)).collect())
            }
            (Algebra::Chang, Elem::Chang(a), Elem::Chang(b)) => Elem::Chang(a.oplus(*b)),
            (Algebra::FinCof, Elem::Set(a), Elem::Set(b)) => Elem::Set(a.union(b)),
            (Algebra::Free1 | Algebra::Pwl, Elem::Fn(f), Elem::Fn(g)) => Elem::Fn(f.oplus(g)),
            (Algebra::Table(t), Elem::Index(i), Elem::Index(j)) => Elem::Index(t.oplus(*i, *j)),
            _ => unreachable!("operands were checked against the algebra"),
        }
    }

    fn neg_raw(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Algebra::UnitInterval | Algebra::Chain(_), Elem::Rat(a)) => Elem::Rat(Rat::one() - a),
            (Algebra::Product(base, _), Elem::Tuple(a)) => Elem::Tuple(a.iter().map(|p| base.neg_raw(p)).collect()),
            (Algebra::Chang, Elem::Chang(a)) => Elem::Chang(a.neg()),
            (Algebra::FinCof, Elem::Set(a)) => Elem::Set(a.complement()),
            (Algebra::Free1 | Algebra::Pwl, Elem::Fn(f)) => Elem::Fn(f.neg()),
            (Algebra::Table(t), Elem::Index(i)) => Elem::Index(t.neg(*i)),
            _ => unreachable!("operand was checked against the algebra"),
        }
    }

    pub fn oplus(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.oplus_raw(x, y))
    }

    pub fn neg(&self, x: &Elem) -> Result<Elem> {
        self.check(x)?;
        Ok(self.neg_raw(x))
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`
    pub fn odot(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.odot_raw(x, y))
    }

    fn odot_raw(&self, x: &Elem, y: &Elem) -> Elem {
        self.neg_raw(&self.oplus_raw(&self.neg_raw(x), &self.neg_raw(y)))
    }

    /// `x ⊖ y = x ⊙ ¬y`
    pub fn ominus(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.odot_raw(x, &self.neg_raw(y)))
    }

    /// `x ∨ y = ¬(¬x ⊕ y) ⊕ y`
    pub fn join(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.join_raw(x, y))
    }

    fn join_raw(&self, x: &Elem, y: &Elem) -> Elem {
        self.oplus_raw(&self.neg_raw(&self.oplus_raw(&self.neg_raw(x), y)), y)
    }

    /// `x ∧ y = ¬(¬x ∨ ¬y)`
    pub fn meet(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.meet_raw(x, y))
    }

    fn meet_raw(&self, x: &Elem, y: &Elem) -> Elem {
        self.neg_raw(&self.join_raw(&self.neg_raw(x), &self.neg_raw(y)))
    }

    /// `x ≤ y` iff `x ∧ y = x`
    pub fn leq(&self, x: &Elem, y: &Elem) -> Result<bool> {
        Ok(self.meet(x, y)? == *x)
    }

    pub fn derived(&self, which: Derived, x: &Elem, y: &Elem) -> Result<DerivedValue> {
        Ok(match which {
            Derived::Odot => DerivedValue::Elem(self.odot(x, y)?),
            Derived::Ominus => DerivedValue::Elem(self.ominus(x, y)?),
            Derived::Join => DerivedValue::Elem(self.join(x, y)?),
            Derived::Meet => DerivedValue::Elem(self.meet(x, y)?),
            Derived::Leq => DerivedValue::Bool(self.leq(x, y)?),
        })
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Algebra::Chain(_) | Algebra::Table(_) => true,
            Algebra::Product(base, _) => base.is_finite(),
            _ => false,
        }
    }

    /// Carrier size, `None` for infinite algebras or sizes beyond [`MAX_CARRIER`].
    pub fn size(&self) -> Option<usize> {
        match self {
            Algebra::Chain(k) => Some(*k as usize + 1),
            Algebra::Table(t) => Some(t.len()),
            Algebra::Product(base, n) => {
                let b = base.size()?;
                let mut total: usize = 1;
                for _ in 0..*n {
                    total = total.checked_mul(b).filter(|t| *t <= MAX_CARRIER)?;
                }
                Some(total)
            }
            _ => None,
        }
    }

    /// The carrier in canonical order: ascending for chains, lexicographic
    /// for products, table order for tables.
    pub fn carrier(&self) -> Result<Vec<Elem>> {
        let not_finite = || Error::NotFinite {
            algebra: self.to_string(),
        };
        let n = self.size().ok_or_else(not_finite)?;
        match self {
            Algebra::Chain(k) => Ok((0..=*k).map(|i| Elem::Rat(crate::exact::rat(i as i64, *k as i64))).collect()),
            Algebra::Table(t) => Ok((0..t.len()).map(Elem::Index).collect()),
            Algebra::Product(base, arity) => {
                let b = base.carrier()?;
                let mut out = Vec::with_capacity(n);
                for mut idx in 0..n {
                    let mut comps = vec![Elem::Index(0); *arity];
                    for slot in comps.iter_mut().rev() {
                        *slot = b[idx % b.len()].clone();
                        idx /= b.len();
                    }
                    out.push(Elem::Tuple(comps));
                }
                Ok(out)
            }
            _ => Err(not_finite()),
        }
    }

    /// Position of `x` in [`Algebra::carrier`].
    pub fn index_of(&self, x: &Elem) -> Result<usize> {
        self.check(x)?;
        match (self, x) {
            (Algebra::Chain(k), Elem::Rat(r)) => {
                let i = r * Rat::from_integer(BigInt::from(*k));
                Ok(i.to_integer().to_usize().expect("chain index fits"))
            }
            (Algebra::Table(_), Elem::Index(i)) => Ok(*i),
            (Algebra::Product(base, _), Elem::Tuple(xs)) => {
                let b = base.size().ok_or_else(|| Error::NotFinite {
                    algebra: self.to_string(),
                })?;
                let mut idx = 0;
                for c in xs {
                    idx = idx * b + base.index_of(c)?;
                }
                Ok(idx)
            }
            _ => Err(Error::NotFinite {
                algebra: self.to_string(),
            }),
        }
    }

    /// Whether elements are rationals or tuples of rationals, so that sums in
    /// the enveloping group can be taken as plain rational sums.
    pub fn is_rational_valued(&self) -> bool {
        match self {
            Algebra::UnitInterval | Algebra::Chain(_) => true,
            Algebra::Product(base, _) => base.is_rational_valued(),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derived {
    Odot,
    Ominus,
    Join,
    Meet,
    Leq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedValue {
    Elem(Elem),
    Bool(bool),
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::UnitInterval => write!(f, "unit"),
            Algebra::Chain(k) => write!(f, "chain:{k}"),
            Algebra::Product(base, n) => write!(f, "prod:{base}:{n}"),
            Algebra::Chang => write!(f, "chang"),
            Algebra::FinCof => write!(f, "fincof"),
            Algebra::Free1 => write!(f, "free1"),
            Algebra::Pwl => write!(f, "pwl"),
            Algebra::Table(t) => write!(f, "table[{}]", t.len()),
        }
    }
}
