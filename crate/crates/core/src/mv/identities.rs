use super::{sample_elem, Algebra, Elem, Verdict};
use crate::error::Result;
use crate::Rng;

/// The three MV identities used throughout the probability-map theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `b ∧ ¬a = b ⊖ (a ⊙ b)`
    Mv1,
    /// `a ⊕ b = a ⊕ (b ∧ ¬a)`
    Mv2,
    /// `a ⊙ (b ∧ ¬a) = 0`
    Mv3,
}

impl Identity {
    pub const ALL: [Identity; 3] = [Identity::Mv1, Identity::Mv2, Identity::Mv3];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Mv1 => "MV1",
            Identity::Mv2 => "MV2",
            Identity::Mv3 => "MV3",
        }
    }

    /// Both sides at `(a, b)`.
    pub fn sides(self, alg: &Algebra, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
        let b_and_not_a = alg.meet(b, &alg.neg(a)?)?;
        Ok(match self {
            Identity::Mv1 => (b_and_not_a, alg.ominus(b, &alg.odot(a, b)?)?),
            Identity::Mv2 => (alg.oplus(a, b)?, alg.oplus(a, &b_and_not_a)?),
            Identity::Mv3 => (alg.odot(a, &b_and_not_a)?, alg.zero()),
        })
    }
}

/// Pairs to test a binary law on: every pair of a finite carrier, otherwise
/// `budget` sampled pairs.
pub fn test_pairs(alg: &Algebra, budget: usize, rng: &mut Rng) -> Result<Vec<(Elem, Elem)>> {
    if alg.is_finite() {
        let c = alg.carrier()?;
        return Ok(c.iter().flat_map(|a| c.iter().map(move |b| (a.clone(), b.clone()))).collect());
    }
    (0..budget)
        .map(|_| Ok((sample_elem(alg, rng)?, sample_elem(alg, rng)?)))
        .collect()
}

pub fn identity_check(alg: &Algebra, id: Identity, sample_budget: usize, rng: &mut Rng) -> Result<Verdict> {
    for (a, b) in test_pairs(alg, sample_budget, rng)? {
        let (lhs, rhs) = id.sides(alg, &a, &b)?;
        if lhs != rhs {
            return Ok(Verdict::Fails(vec![a, b]));
        }
    }
    Ok(Verdict::Holds)
}
