use super::ProbMap;
use crate::error::{Error, Result};
use crate::mv::{to_table, Algebra, FiniteTable};

struct Search<'a> {
    m: &'a FiniteTable,
    n: &'a FiniteTable,
    assigned: Vec<Option<usize>>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Monotonicity against every assigned element, and P1 on every pair
    /// whose four relevant values are known.
    fn consistent(&self, a: usize) -> bool {
        let (m, n) = (self.m, self.n);
        let v = self.assigned[a].expect("just assigned");
        for b in 0..m.len() {
            let Some(w) = self.assigned[b] else { continue };
            if (m.leq(b, a) && !n.leq(w, v)) || (m.leq(a, b) && !n.leq(v, w)) {
                return false;
            }
        }
        for x in 0..m.len() {
            for y in 0..m.len() {
                if x != a && y != a && m.oplus(x, y) != a && m.meet(y, m.neg(x)) != a {
                    continue;
                }
                let vals = (
                    self.assigned[x],
                    self.assigned[m.oplus(x, y)],
                    self.assigned[m.meet(y, m.neg(x))],
                );
                if let (Some(px), Some(ps), Some(pr)) = vals {
                    if ps != n.oplus(px, pr) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(self.budget));
        }
        let Some(&a) = self.order.get(depth) else {
            self.found.push(self.assigned.iter().map(|v| v.expect("complete")).collect());
            return Ok(());
        };
        let na = self.m.neg(a);
        for v in 0..self.n.len() {
            let nv = self.n.neg(v);
            if na == a && nv != v {
                continue;
            }
            self.assigned[a] = Some(v);
            self.assigned[na] = Some(nv);
            if self.consistent(a) && self.consistent(na) {
                self.run(depth + 1)?;
            }
            self.assigned[a] = None;
            self.assigned[na] = None;
        }
        Ok(())
    }
}

/// Every probability map between two finite algebras, ordered
/// lexicographically by their tables of codomain indices.
///
/// Backtracks over `{a, ¬a}` pairs with `p(0) = 0`, `p(1) = 1` fixed, pruning
/// by monotonicity and partial P1 checks. `budget` bounds the search nodes.
pub fn enumerate_prob_maps(m: &Algebra, n: &Algebra, budget: u64) -> Result<Vec<ProbMap>> {
    let (mt, nt) = (to_table(m)?, to_table(n)?);
    let mut assigned = vec![None; mt.len()];
    assigned[mt.zero()] = Some(nt.zero());
    assigned[mt.one()] = Some(nt.one());
    let mut order = Vec::new();
    let mut seen = vec![false; mt.len()];
    seen[mt.zero()] = true;
    seen[mt.one()] = true;
    for a in 0..mt.len() {
        if !seen[a] {
            seen[a] = true;
            seen[mt.neg(a)] = true;
            order.push(a);
        }
    }
    let mut s = Search {
        m: &mt,
        n: &nt,
        assigned,
        order,
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    if s.consistent(mt.zero()) && s.consistent(mt.one()) {
        s.run(0)?;
    }
    let mut found = s.found;
    found.sort();
    let carrier = n.carrier()?;
    found
        .into_iter()
        .map(|t| ProbMap::table(m.clone(), n.clone(), t.into_iter().map(|i| carrier[i].clone()).collect()))
        .collect()
}

/// All maps with `p(0) = 0` and `p(1) = 1`, probability maps or not.
pub fn endpoint_fixing_functions(m: &Algebra, n: &Algebra) -> Result<Vec<ProbMap>> {
    let (mc, nc) = (m.carrier()?, n.carrier()?);
    let (zero, one) = (m.index_of(&m.zero())?, m.index_of(&m.one())?);
    let free: Vec<usize> = (0..mc.len()).filter(|&i| i != zero && i != one).collect();
    let total = nc
        .len()
        .checked_pow(free.len() as u32)
        .ok_or_else(|| Error::Budget(u64::MAX))?;
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut values = vec![n.zero(); mc.len()];
        values[one] = n.one();
        for &i in free.iter().rev() {
            values[i] = nc[code % nc.len()].clone();
            code /= nc.len();
        }
        out.push(ProbMap::table(m.clone(), n.clone(), values)?);
    }
    Ok(out)
}
