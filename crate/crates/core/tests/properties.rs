use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use mvprob::exact::{barycentric, rat};
use mvprob::gamma::{EnvelopingGroup, GoodSeq};
use mvprob::mv::{Algebra, ChangElem, Elem, FinCofSet};
use mvprob::probmaps::{apply_stochastic, StochMat};
use mvprob::spectra::{is_state, state_decompose, state_from_measure};
use mvprob::term::{self, free_interpret, parse, print, random_term};
use mvprob::{seeded, Rat};

fn unit_rat() -> impl Strategy<Value = Rat> {
    (1i64..=24).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d)))
}

fn unit_elem() -> impl Strategy<Value = Elem> {
    unit_rat().prop_map(Elem::Rat)
}

fn chang_elem() -> impl Strategy<Value = ChangElem> {
    prop_oneof![(0u64..40).prop_map(ChangElem::Fin), (0u64..40).prop_map(ChangElem::Coinf)]
}

/// Chang's algebra inside Z ×lex Z: Fin(n) = (0, n), Coinf(n) = (1, -n).
fn lex(x: &ChangElem) -> (i64, i64) {
    match *x {
        ChangElem::Fin(n) => (0, n as i64),
        ChangElem::Coinf(n) => (1, -(n as i64)),
    }
}

fn lex_oplus(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 + b.0, a.1 + b.1).min((1, 0))
}

fn weights(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(0i64..6, len).prop_map(|raw| {
        let total: i64 = raw.iter().sum();
        if total == 0 {
            let mut w = vec![Rat::zero(); raw.len()];
            w[0] = Rat::one();
            w
        } else {
            raw.iter().map(|&x| rat(x, total)).collect()
        }
    })
}

fn fincof() -> impl Strategy<Value = FinCofSet> {
    (prop::collection::btree_set(0u64..12, 0..5), any::<bool>()).prop_map(|(s, co)| {
        if co {
            FinCofSet::cofinite(s)
        } else {
            FinCofSet::finite(s)
        }
    })
}

proptest! {
    #[test]
    fn unit_interval_matches_truncated_sum(a in unit_rat(), b in unit_rat()) {
        let u = Algebra::UnitInterval;
        let (x, y) = (Elem::Rat(a.clone()), Elem::Rat(b.clone()));
        let sum = (a.clone() + b.clone()).min(Rat::one());
        prop_assert_eq!(u.oplus(&x, &y).unwrap(), Elem::Rat(sum));
        prop_assert_eq!(u.neg(&x).unwrap(), Elem::Rat(Rat::one() - a.clone()));
        let prod = (a.clone() + b.clone() - Rat::one()).max(Rat::zero());
        prop_assert_eq!(u.odot(&x, &y).unwrap(), Elem::Rat(prod));
        prop_assert_eq!(u.leq(&x, &y).unwrap(), a <= b);
    }

    #[test]
    fn unit_interval_mv_laws(x in unit_elem(), y in unit_elem(), z in unit_elem()) {
        let u = Algebra::UnitInterval;
        let p = |a: &Elem, b: &Elem| u.oplus(a, b).unwrap();
        let n = |a: &Elem| u.neg(a).unwrap();
        prop_assert_eq!(p(&x, &y), p(&y, &x));
        prop_assert_eq!(p(&p(&x, &y), &z), p(&x, &p(&y, &z)));
        prop_assert_eq!(p(&x, &u.zero()), x.clone());
        prop_assert_eq!(n(&n(&x)), x.clone());
        prop_assert_eq!(p(&x, &u.one()), u.one());
        prop_assert_eq!(p(&n(&p(&n(&x), &y)), &y), p(&n(&p(&n(&y), &x)), &x));
    }

    #[test]
    fn chang_matches_lexicographic_oracle(x in chang_elem(), y in chang_elem()) {
        let c = Algebra::Chang;
        let s = c.oplus(&Elem::Chang(x), &Elem::Chang(y)).unwrap();
        let Elem::Chang(s) = s else { panic!("not a Chang element") };
        prop_assert_eq!(lex(&s), lex_oplus(lex(&x), lex(&y)));
        let Elem::Chang(nx) = c.neg(&Elem::Chang(x)).unwrap() else { panic!("not a Chang element") };
        let (a, b) = lex(&x);
        prop_assert_eq!(lex(&nx), (1 - a, -b));
        prop_assert_eq!(c.leq(&Elem::Chang(x), &Elem::Chang(y)).unwrap(), lex(&x) <= lex(&y));
    }

    #[test]
    fn chain_order_is_total(k in 1u32..9, i in 0i64..9, j in 0i64..9, l in 0i64..9) {
        let alg = Algebra::Chain(k);
        let k = k as i64;
        let e = |n: i64| Elem::Rat(rat(n.min(k), k));
        let (a, b, c) = (e(i), e(j), e(l));
        let le = |x: &Elem, y: &Elem| alg.leq(x, y).unwrap();
        prop_assert!(le(&a, &b) || le(&b, &a));
        prop_assert!(le(&a, &a));
        if le(&a, &b) && le(&b, &a) { prop_assert_eq!(&a, &b); }
        if le(&a, &b) && le(&b, &c) { prop_assert!(le(&a, &c)); }
        prop_assert_eq!(le(&a, &b), alg.join(&a, &b).unwrap() == b);
    }

    #[test]
    fn fincof_is_boolean(x in fincof(), y in fincof()) {
        let b = Algebra::FinCof;
        let (ex, ey) = (Elem::Set(x.clone()), Elem::Set(y.clone()));
        prop_assert_eq!(b.oplus(&ex, &ex).unwrap(), ex.clone());
        prop_assert_eq!(b.oplus(&ex, &b.neg(&ex).unwrap()).unwrap(), b.one());
        let Elem::Set(u) = b.oplus(&ex, &ey).unwrap() else { panic!("not a set") };
        for n in 0..16 {
            prop_assert_eq!(u.contains(n), x.contains(n) || y.contains(n));
        }
    }

    #[test]
    fn free_terms_are_mcnaughton(seed in any::<u64>(), depth in 0usize..7) {
        let mut rng = seeded(seed);
        let t = random_term(&mut rng, depth, &["x"]);
        let f = free_interpret(&t).unwrap();
        prop_assert!(f.is_mcnaughton());
        prop_assert!(Algebra::Free1.check(&Elem::Fn(f.clone())).is_ok());
        prop_assert_eq!(f.reflect().reflect(), f);
    }

    #[test]
    fn free_interpretation_is_pointwise(seed in any::<u64>(), depth in 0usize..6, x in unit_rat()) {
        let mut rng = seeded(seed);
        let (s, t) = (random_term(&mut rng, depth, &["x"]), random_term(&mut rng, depth, &["x"]));
        let (fs, ft) = (free_interpret(&s).unwrap(), free_interpret(&t).unwrap());
        prop_assert_eq!(free_interpret(&term::Term::oplus(s.clone(), t.clone())).unwrap(), fs.oplus(&ft));
        prop_assert_eq!(free_interpret(&term::Term::neg(s.clone())).unwrap(), fs.neg());
        let env = BTreeMap::from([("x".to_string(), Elem::Rat(x.clone()))]);
        let direct = term::eval(&s, &Algebra::UnitInterval, &env).unwrap();
        prop_assert_eq!(direct, Elem::Rat(fs.eval(&x).unwrap()));
    }

    #[test]
    fn print_then_parse(seed in any::<u64>(), depth in 0usize..9) {
        let mut rng = seeded(seed);
        let t = random_term(&mut rng, depth, &["x", "y", "z"]);
        prop_assert_eq!(parse(&print(&t)).unwrap(), t);
    }

    #[test]
    fn good_sequence_sum_commutes(xs in prop::collection::vec(0i64..=3, 0..4), ys in prop::collection::vec(0i64..=3, 0..4)) {
        let alg = Algebra::Chain(3);
        let g = EnvelopingGroup::new(&alg);
        let a = g.gs_sum(xs.iter().map(|&i| Elem::Rat(rat(i, 3)))).unwrap();
        let b = g.gs_sum(ys.iter().map(|&i| Elem::Rat(rat(i, 3)))).unwrap();
        let ab = g.gs_add(&a, &b).unwrap();
        prop_assert_eq!(&ab, &g.gs_add(&b, &a).unwrap());
        prop_assert!(ab.is_good(&alg).unwrap());
        prop_assert_eq!(g.gs_add(&ab, &GoodSeq::zero()).unwrap(), ab.clone());
        // the total mass is additive
        let mass = |s: &GoodSeq| s.entries().iter().map(|e| e.as_rat().unwrap().clone()).sum::<Rat>();
        prop_assert_eq!(mass(&ab), mass(&a) + mass(&b));
    }

    #[test]
    fn stochastic_images_stay_in_the_cube(rows in prop::collection::vec(weights(3), 3), v in prop::collection::vec(unit_rat(), 3)) {
        let s = StochMat::new(rows).unwrap();
        let out = apply_stochastic(&s, &v).unwrap();
        let (lo, hi) = (v.iter().min().unwrap(), v.iter().max().unwrap());
        for y in &out {
            prop_assert!(lo <= y && y <= hi);
        }
    }

    #[test]
    fn barycentric_recovers_weights(w in weights(4)) {
        let verts: Vec<Vec<Rat>> = vec![
            vec![rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 2), rat(0, 1)],
            vec![rat(1, 3), rat(1, 3), rat(1, 1)],
        ];
        let point: Vec<Rat> = (0..3).map(|j| verts.iter().zip(&w).map(|(v, c)| v[j].clone() * c.clone()).sum()).collect();
        prop_assert_eq!(barycentric(&verts, &point).unwrap(), w);
    }

    #[test]
    fn states_decompose_into_their_measure(w in weights(3)) {
        let alg = Algebra::product(Algebra::Chain(2), 3);
        let s = state_from_measure(&alg, &w).unwrap();
        prop_assert_eq!(state_decompose(&alg, &s).unwrap(), w);
        prop_assert!(is_state(&alg, &s).unwrap());
    }
}
