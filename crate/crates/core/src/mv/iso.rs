use super::{Algebra, FiniteTable};
use crate::error::Result;

/// Tabulates a finite algebra in carrier order; labels are the element
/// renderings.
pub fn to_table(alg: &Algebra) -> Result<FiniteTable> {
    let c = alg.carrier()?;
    let labels = c.iter().map(|x| x.to_string()).collect();
    let mut oplus = Vec::with_capacity(c.len());
    for x in &c {
        oplus.push(
            c.iter()
                .map(|y| alg.index_of(&alg.oplus(x, y)?))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let neg = c.iter().map(|x| alg.index_of(&alg.neg(x)?)).collect::<Result<Vec<_>>>()?;
    FiniteTable::new_unchecked(labels, oplus, neg)
}

/// An MV-isomorphism `a -> b` as an index map, found by backtracking.
pub fn find_isomorphism(a: &FiniteTable, b: &FiniteTable) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    map[a.zero()] = b.zero();
    used[b.zero()] = true;
    if extend(a, b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

fn consistent(a: &FiniteTable, b: &FiniteTable, map: &[usize], x: usize) -> bool {
    let nx = a.neg(x);
    if map[nx] != usize::MAX && map[nx] != b.neg(map[x]) {
        return false;
    }
    (0..a.len()).filter(|&y| map[y] != usize::MAX).all(|y| {
        let s = a.oplus(x, y);
        map[s] == usize::MAX || map[s] == b.oplus(map[x], map[y])
    })
}

fn extend(a: &FiniteTable, b: &FiniteTable, map: &mut [usize], used: &mut [bool], x: usize) -> bool {
    if x == a.len() {
        // every pair was checked as its later member got assigned
        return (0..a.len()).all(|p| consistent(a, b, map, p));
    }
    if map[x] != usize::MAX {
        return extend(a, b, map, used, x + 1);
    }
    for cand in 0..b.len() {
        if used[cand] {
            continue;
        }
        map[x] = cand;
        used[cand] = true;
        if consistent(a, b, map, x) && extend(a, b, map, used, x + 1) {
            return true;
        }
        map[x] = usize::MAX;
        used[cand] = false;
    }
    false
}
