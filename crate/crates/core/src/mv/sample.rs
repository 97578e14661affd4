use rand::Rng as _;

use super::{Algebra, ChangElem, Elem, FinCofSet};
use crate::error::Result;
use crate::exact::rat;
use crate::term::{free_interpret, random_term};
use crate::{PwlFn, Rng};

/// Largest denominator drawn for `[0,1] ∩ ℚ`.
pub const MAX_DENOM: i64 = 16;
/// Largest ε-index drawn for Chang's algebra.
pub const MAX_CHANG_INDEX: u64 = 20;
/// FinCof samples draw their finite side from `0..FINCOF_RANGE`.
pub const FINCOF_RANGE: u64 = 12;
/// Depth of the random terms behind Free1 samples.
pub const FREE_TERM_DEPTH: usize = 4;

/// Draws one element, reproducibly for a seeded generator.
///
/// Rationals are uniform over numerators for a uniform denominator up to
/// [`MAX_DENOM`]; Chang elements are uniform over tag and index; Free1
/// elements are free interpretations of random one-variable terms.
pub fn sample_elem(alg: &Algebra, rng: &mut Rng) -> Result<Elem> {
    Ok(match alg {
        Algebra::UnitInterval => {
            let d = rng.gen_range(1..=MAX_DENOM);
            Elem::Rat(rat(rng.gen_range(0..=d), d))
        }
        Algebra::Chain(k) => Elem::Rat(rat(rng.gen_range(0..=*k as i64), *k as i64)),
        Algebra::Product(base, n) => Elem::Tuple((0..*n).map(|_| sample_elem(base, rng)).collect::<Result<_>>()?),
        Algebra::Chang => {
            let i = rng.gen_range(0..=MAX_CHANG_INDEX);
            Elem::Chang(if rng.gen_bool(0.5) {
                ChangElem::Fin(i)
            } else {
                ChangElem::Coinf(i)
            })
        }
        Algebra::FinCof => {
            let side: Vec<u64> = (0..FINCOF_RANGE).filter(|_| rng.gen_bool(0.3)).collect();
            Elem::Set(if rng.gen_bool(0.5) {
                FinCofSet::finite(side)
            } else {
                FinCofSet::cofinite(side)
            })
        }
        Algebra::Free1 => Elem::Fn(sample_mcnaughton(rng)?),
        Algebra::Pwl => {
            let f = sample_mcnaughton(rng)?;
            if rng.gen_bool(0.5) {
                Elem::Fn(f)
            } else {
                let g = sample_mcnaughton(rng)?;
                let d = rng.gen_range(1..=8);
                let alpha = rat(rng.gen_range(0..=d), d);
                let beta = rat(1, 1) - alpha.clone();
                Elem::Fn(PwlFn::scale_shift(&alpha, &f, &beta, &g)?)
            }
        }
        Algebra::Table(t) => Elem::Index(rng.gen_range(0..t.len())),
    })
}

/// A McNaughton function obtained from a random one-variable term.
pub fn sample_mcnaughton(rng: &mut Rng) -> Result<PwlFn> {
    let t = random_term(rng, FREE_TERM_DEPTH, &["x"]);
    free_interpret(&t)
}
