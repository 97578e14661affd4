//! Continuous piecewise-linear functions `[0,1] -> [0,1]` with exact breakpoints.
//!
//! Coefficients range over any [`Scalar`], so convex combinations stay
//! representable; being a McNaughton function (integer coefficients on every
//! piece) is a predicate, see [`Pwl::is_mcnaughton`]. The one-variable
//! McNaughton functions form the free MV-algebra on one generator.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// `x ↦ slope·x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Scalar> Piece<T> {
    pub fn new(slope: T, intercept: T) -> Self {
        Piece { slope, intercept }
    }

    pub fn constant(c: T) -> Self {
        Piece::new(T::zero(), c)
    }

    pub fn at(&self, x: &T) -> T {
        self.slope.clone() * x.clone() + self.intercept.clone()
    }

    fn add(&self, o: &Self) -> Self {
        Piece::new(
            self.slope.clone() + o.slope.clone(),
            self.intercept.clone() + o.intercept.clone(),
        )
    }

    fn scale(&self, k: &T) -> Self {
        Piece::new(self.slope.clone() * k.clone(), self.intercept.clone() * k.clone())
    }
}

/// Which pointwise MV operation [`Pwl::combine`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Oplus,
    Odot,
    Join,
    Meet,
}

/// Canonical piecewise-linear function on `[0,1]`.
///
/// Invariants: breakpoints strictly increase from 0 to 1, one piece per
/// interval, continuity at interior breakpoints, values in `[0,1]`, and no
/// interior breakpoint separates two equal pieces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pwl<T> {
    breakpoints: Vec<T>,
    pieces: Vec<Piece<T>>,
}

impl<T: Scalar> Pwl<T> {
    pub fn new(breakpoints: Vec<T>, pieces: Vec<Piece<T>>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidPwl(m.to_string()));
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return bad("need n+1 breakpoints for n >= 1 pieces");
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return bad("breakpoints must run from 0 to 1");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return bad("breakpoints must be strictly increasing");
        }
        for i in 1..pieces.len() {
            if pieces[i - 1].at(&breakpoints[i]) != pieces[i].at(&breakpoints[i]) {
                return bad("discontinuous at an interior breakpoint");
            }
        }
        let f = Self::assemble(breakpoints, pieces);
        f.check_range()?;
        Ok(f)
    }

    /// The function through the given `(x, y)` points, linear in between.
    pub fn from_points(points: &[(T, T)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPwl("need at least two points".into()));
        }
        let mut pieces = Vec::new();
        for w in points.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if x0 >= x1 {
                return Err(Error::InvalidPwl("abscissae must be strictly increasing".into()));
            }
            let slope = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
            let intercept = y0.clone() - slope.clone() * x0.clone();
            pieces.push(Piece::new(slope, intercept));
        }
        Self::new(points.iter().map(|p| p.0.clone()).collect(), pieces)
    }

    pub fn constant(c: T) -> Result<Self> {
        Self::new(vec![T::zero(), T::one()], vec![Piece::constant(c)])
    }

    pub fn identity() -> Self {
        Self::assemble(vec![T::zero(), T::one()], vec![Piece::new(T::one(), T::zero())])
    }

    pub fn zero() -> Self {
        Self::raw_constant(T::zero())
    }

    pub fn one() -> Self {
        Self::raw_constant(T::one())
    }

    fn raw_constant(c: T) -> Self {
        Self::assemble(vec![T::zero(), T::one()], vec![Piece::constant(c)])
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    /// Canonicalizes without validating the range; used for intermediate
    /// sums that may leave `[0,1]`.
    fn assemble(mut breakpoints: Vec<T>, mut pieces: Vec<Piece<T>>) -> Self {
        let mut i = 1;
        while i < pieces.len() {
            if pieces[i] == pieces[i - 1] {
                pieces.remove(i);
                breakpoints.remove(i);
            } else {
                i += 1;
            }
        }
        Pwl { breakpoints, pieces }
    }

    fn check_range(&self) -> Result<()> {
        for (i, x) in self.breakpoints.iter().enumerate() {
            let piece = &self.pieces[i.min(self.pieces.len() - 1)];
            let y = piece.at(x);
            if y < T::zero() || y > T::one() {
                return Err(Error::OutOfRange(format!("value {y} at {x} leaves [0,1]")));
            }
        }
        Ok(())
    }

    /// Values at the breakpoints; together with the breakpoints these
    /// determine the function.
    pub fn values(&self) -> Vec<T> {
        let mut v: Vec<T> = self.pieces.iter().zip(&self.breakpoints).map(|(p, x)| p.at(x)).collect();
        v.push(self.pieces[self.pieces.len() - 1].at(&T::one()));
        v
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        if *x < T::zero() || *x > T::one() {
            return Err(Error::OutOfRange(format!("{x} is outside [0,1]")));
        }
        let i = self.breakpoints[1..].partition_point(|b| b < x).min(self.pieces.len() - 1);
        Ok(self.pieces[i].at(x))
    }

    pub fn is_mcnaughton(&self) -> bool {
        self.pieces.iter().all(|p| p.slope.is_integral() && p.intercept.is_integral())
    }

    /// Pairs the pieces of `self` and `other` over their common refinement.
    fn refine<'a>(&'a self, other: &'a Self) -> Vec<(T, T, &'a Piece<T>, &'a Piece<T>)> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut left = T::zero();
        while i < self.pieces.len() && j < other.pieces.len() {
            let ri = &self.breakpoints[i + 1];
            let rj = &other.breakpoints[j + 1];
            let right = if ri <= rj { ri.clone() } else { rj.clone() };
            out.push((left, right.clone(), &self.pieces[i], &other.pieces[j]));
            if *ri == right {
                i += 1;
            }
            if *rj == right {
                j += 1;
            }
            left = right;
        }
        out
    }

    fn add_raw(&self, other: &Self) -> Self {
        let mut bps = vec![T::zero()];
        let mut pieces = Vec::new();
        for (_, r, p, q) in self.refine(other) {
            bps.push(r);
            pieces.push(p.add(q));
        }
        Self::assemble(bps, pieces)
    }

    fn map_pieces(&self, f: impl Fn(&Piece<T>) -> Piece<T>) -> Self {
        Self::assemble(self.breakpoints.clone(), self.pieces.iter().map(f).collect())
    }

    /// Pointwise maximum (`take_max`) or minimum, splitting each interval
    /// at the exact crossing of the two lines when there is one.
    fn envelope(&self, other: &Self, take_max: bool) -> Self {
        let mut bps = vec![T::zero()];
        let mut pieces = Vec::new();
        for (l, r, p, q) in self.refine(other) {
            let dl = p.at(&l) - q.at(&l);
            let dr = p.at(&r) - q.at(&r);
            let p_wins_at = |d: &T| if take_max { *d >= T::zero() } else { *d <= T::zero() };
            if (dl.is_positive() && dr.is_negative()) || (dl.is_negative() && dr.is_positive()) {
                let x = (q.intercept.clone() - p.intercept.clone()) / (p.slope.clone() - q.slope.clone());
                let (first, second) = if p_wins_at(&dl) { (p, q) } else { (q, p) };
                bps.push(x);
                pieces.push(first.clone());
                bps.push(r);
                pieces.push(second.clone());
            } else {
                // no strict sign change: one line dominates on the whole interval
                let p_wins = if dl.is_zero() { p_wins_at(&dr) } else { p_wins_at(&dl) };
                bps.push(r);
                pieces.push(if p_wins { p.clone() } else { q.clone() });
            }
        }
        Self::assemble(bps, pieces)
    }

    pub fn neg(&self) -> Self {
        self.map_pieces(|p| Piece::new(-p.slope.clone(), T::one() - p.intercept.clone()))
    }

    pub fn combine(&self, other: &Self, which: Combine) -> Self {
        match which {
            Combine::Oplus => self.add_raw(other).envelope(&Self::one(), false),
            Combine::Odot => self
                .add_raw(other)
                .map_pieces(|p| Piece::new(p.slope.clone(), p.intercept.clone() - T::one()))
                .envelope(&Self::zero(), true),
            Combine::Join => self.envelope(other, true),
            Combine::Meet => self.envelope(other, false),
        }
    }

    pub fn oplus(&self, other: &Self) -> Self {
        self.combine(other, Combine::Oplus)
    }

    pub fn odot(&self, other: &Self) -> Self {
        self.combine(other, Combine::Odot)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.combine(other, Combine::Join)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.combine(other, Combine::Meet)
    }

    /// `alpha·f + beta·g`, which must stay inside `[0,1]`.
    pub fn scale_shift(alpha: &T, f: &Self, beta: &T, g: &Self) -> Result<Self> {
        let h = f.map_pieces(|p| p.scale(alpha)).add_raw(&g.map_pieces(|p| p.scale(beta)));
        h.check_range()?;
        Ok(h)
    }

    /// `x ↦ self(1 - x)`.
    pub fn reflect(&self) -> Self {
        let bps = self.breakpoints.iter().rev().map(|b| T::one() - b.clone()).collect();
        let pieces = self
            .pieces
            .iter()
            .rev()
            .map(|p| Piece::new(-p.slope.clone(), p.slope.clone() + p.intercept.clone()))
            .collect();
        Self::assemble(bps, pieces)
    }

    /// `x ↦ x·a(0) + (1-x)·a(1)` for a McNaughton function `a`.
    pub fn example_pm(&self) -> Result<Self> {
        if !self.is_mcnaughton() {
            return Err(Error::InvalidPwl("argument is not a McNaughton function".into()));
        }
        let a0 = self.pieces[0].at(&T::zero());
        let a1 = self.pieces[self.pieces.len() - 1].at(&T::one());
        Ok(Self::assemble(
            vec![T::zero(), T::one()],
            vec![Piece::new(a0 - a1.clone(), a1)],
        ))
    }
}

impl<T: Scalar> fmt::Debug for Pwl<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pwl[")?;
        for (i, (x, y)) in self.breakpoints.iter().zip(self.values()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type F = Pwl<Rational64>;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn p(s: i64, c: i64) -> Piece<Rational64> {
        Piece::new(q(s, 1), q(c, 1))
    }

    #[test]
    fn negation_of_identity() {
        let n = F::identity().neg();
        assert_eq!(n.pieces(), &[p(-1, 1)]);
        assert_eq!(n.neg(), F::identity());
    }

    #[test]
    fn tent_complement() {
        let id = F::identity();
        let t = id.join(&id.neg());
        assert_eq!(t.breakpoints(), &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(t.pieces(), &[p(-1, 1), p(1, 0)]);
        assert_eq!(t.eval(&q(1, 2)).unwrap(), q(1, 2));
        assert!(t.is_mcnaughton());
        assert_eq!(t.reflect(), t);
    }

    #[test]
    fn doubling_saturates() {
        let id = F::identity();
        let d = id.oplus(&id);
        assert_eq!(d.breakpoints(), &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(d.pieces(), &[p(2, 0), p(0, 1)]);
        assert_eq!(d.eval(&q(3, 4)).unwrap(), q(1, 1));
        assert_eq!(id.odot(&id).values(), vec![q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn construction_is_validated() {
        assert!(F::new(vec![q(0, 1), q(1, 1)], vec![p(2, 0)]).is_err());
        assert!(F::new(vec![q(0, 1), q(1, 2)], vec![p(1, 0)]).is_err());
        assert!(F::new(vec![q(0, 1), q(1, 2), q(1, 1)], vec![p(1, 0), p(0, 1)]).is_err());
        // an explicit redundant breakpoint is merged away
        let f = F::new(vec![q(0, 1), q(1, 3), q(1, 1)], vec![p(1, 0), p(1, 0)]).unwrap();
        assert_eq!(f, F::identity());
        assert!(f.eval(&q(3, 2)).is_err());
    }

    #[test]
    fn predicates_and_pm() {
        let half = F::constant(q(1, 2)).unwrap();
        assert!(!half.is_mcnaughton());
        assert!(F::one().is_mcnaughton());
        let id = F::identity();
        assert_eq!(id.example_pm().unwrap(), id.neg());
        assert_eq!(id.join(&id.neg()).example_pm().unwrap(), F::one());
        assert_eq!(F::zero().example_pm().unwrap(), F::zero());
        assert!(half.example_pm().is_err());
    }

    #[test]
    fn convex_combination() {
        let id = F::identity();
        let mid = F::scale_shift(&q(1, 2), &id, &q(1, 2), &id.reflect()).unwrap();
        assert_eq!(mid, F::constant(q(1, 2)).unwrap());
        assert!(F::scale_shift(&q(2, 1), &id, &q(0, 1), &id).is_err());
    }

    #[test]
    fn from_points_matches_ops() {
        let f = F::from_points(&[(q(0, 1), q(0, 1)), (q(1, 3), q(1, 1)), (q(1, 1), q(1, 1))]).unwrap();
        let g = F::identity().oplus(&F::identity()).oplus(&F::identity());
        assert_eq!(f, g);
    }
}
