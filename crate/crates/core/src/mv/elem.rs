use std::collections::BTreeSet;
use std::fmt;

use crate::{PwlFn, Rat};

/// Element of Chang's algebra: `Fin(n)` is `nε`, `Coinf(n)` is `1 - nε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChangElem {
    Fin(u64),
    Coinf(u64),
}

impl ChangElem {
    pub fn oplus(self, other: Self) -> Self {
        use ChangElem::*;
        match (self, other) {
            (Fin(m), Fin(n)) => Fin(m + n),
            (Fin(m), Coinf(n)) | (Coinf(n), Fin(m)) => Coinf(n.saturating_sub(m)),
            (Coinf(_), Coinf(_)) => Coinf(0),
        }
    }

    pub fn neg(self) -> Self {
        match self {
            ChangElem::Fin(n) => ChangElem::Coinf(n),
            ChangElem::Coinf(n) => ChangElem::Fin(n),
        }
    }

    pub fn is_infinitesimal(self) -> bool {
        matches!(self, ChangElem::Fin(_))
    }
}

/// Element of the finite–cofinite Boolean algebra over ℕ, stored by its
/// finite side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinCofSet {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

impl FinCofSet {
    pub fn finite(xs: impl IntoIterator<Item = u64>) -> Self {
        FinCofSet::Finite(xs.into_iter().collect())
    }

    pub fn cofinite(xs: impl IntoIterator<Item = u64>) -> Self {
        FinCofSet::Cofinite(xs.into_iter().collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        use FinCofSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b - a),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            FinCofSet::Finite(a) => FinCofSet::Cofinite(a.clone()),
            FinCofSet::Cofinite(a) => FinCofSet::Finite(a.clone()),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            FinCofSet::Finite(a) => a.contains(&n),
            FinCofSet::Cofinite(a) => !a.contains(&n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(Rat),
    Tuple(Vec<Elem>),
    Chang(ChangElem),
    Set(FinCofSet),
    Fn(PwlFn),
    Index(usize),
}

impl Elem {
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rat> for Elem {
    fn from(r: Rat) -> Self {
        Elem::Rat(r)
    }
}

impl From<ChangElem> for Elem {
    fn from(c: ChangElem) -> Self {
        Elem::Chang(c)
    }
}

impl From<FinCofSet> for Elem {
    fn from(s: FinCofSet) -> Self {
        Elem::Set(s)
    }
}

impl From<PwlFn> for Elem {
    fn from(f: PwlFn) -> Self {
        Elem::Fn(f)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => write!(f, "{r}"),
            Elem::Tuple(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Elem::Chang(ChangElem::Fin(n)) => write!(f, "{n}ε"),
            Elem::Chang(ChangElem::Coinf(n)) => write!(f, "1-{n}ε"),
            Elem::Set(FinCofSet::Finite(s)) => write!(f, "{s:?}"),
            Elem::Set(FinCofSet::Cofinite(s)) => write!(f, "ℕ∖{s:?}"),
            Elem::Fn(g) => write!(f, "{g:?}"),
            Elem::Index(i) => write!(f, "#{i}"),
        }
    }
}
