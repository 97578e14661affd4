//! MV-algebras: the concrete instances, derived operations and the identity
//! harness.

mod algebra;
mod elem;
mod identities;
mod iso;
mod sample;
mod table;

pub use algebra::{Algebra, Derived, DerivedValue, MAX_CARRIER};
pub use elem::{ChangElem, Elem, FinCofSet};
pub use identities::{identity_check, test_pairs, Identity};
pub use iso::{find_isomorphism, to_table};
pub use sample::{sample_elem, sample_mcnaughton, FINCOF_RANGE, MAX_CHANG_INDEX, MAX_DENOM};
pub use table::FiniteTable;

/// Outcome of an exhaustive or sampled law check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The arguments at which the law failed.
    Fails(Vec<Elem>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[Elem]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
