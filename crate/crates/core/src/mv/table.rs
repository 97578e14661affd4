use crate::error::{Error, Result};

/// An MV-algebra given by explicit `⊕` and `¬` tables over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    labels: Vec<String>,
    oplus: Vec<Vec<usize>>,
    neg: Vec<usize>,
    zero: usize,
}

impl FiniteTable {
    /// Builds the table and verifies the MV axioms exhaustively.
    pub fn new(labels: Vec<String>, oplus: Vec<Vec<usize>>, neg: Vec<usize>) -> Result<Self> {
        let t = Self::new_unchecked(labels, oplus, neg)?;
        t.verify()?;
        Ok(t)
    }

    /// Shape checks only; the MV axioms are not verified. The identity
    /// harness uses this to exercise broken tables.
    pub fn new_unchecked(labels: Vec<String>, oplus: Vec<Vec<usize>>, neg: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if oplus.len() != n || oplus.iter().any(|r| r.len() != n) || neg.len() != n {
            return Err(Error::InvalidTable(format!("tables must be {n}x{n} and {n}")));
        }
        if oplus.iter().flatten().chain(&neg).any(|&v| v >= n) {
            return Err(Error::InvalidTable("table entry outside the carrier".into()));
        }
        let zero = (0..n)
            .find(|&e| (0..n).all(|x| oplus[e][x] == x && oplus[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no neutral element for ⊕".into()))?;
        Ok(FiniteTable {
            labels,
            oplus,
            neg,
            zero,
        })
    }

    fn verify(&self) -> Result<()> {
        let n = self.len();
        let fail = |law: &str, w: &[usize]| {
            let names: Vec<&str> = w.iter().map(|&i| self.labels[i].as_str()).collect();
            Err(Error::InvalidTable(format!("{law} fails at {names:?}")))
        };
        let one = self.neg[self.zero];
        for x in 0..n {
            if self.neg[self.neg[x]] != x {
                return fail("¬¬x = x", &[x]);
            }
            if self.oplus[x][one] != one {
                return fail("x ⊕ 1 = 1", &[x]);
            }
            for y in 0..n {
                if self.oplus[x][y] != self.oplus[y][x] {
                    return fail("commutativity", &[x, y]);
                }
                let lhs = self.oplus[self.neg[self.oplus[self.neg[x]][y]]][y];
                let rhs = self.oplus[self.neg[self.oplus[self.neg[y]][x]]][x];
                if lhs != rhs {
                    return fail("¬(¬x⊕y)⊕y = ¬(¬y⊕x)⊕x", &[x, y]);
                }
                for z in 0..n {
                    if self.oplus[self.oplus[x][y]][z] != self.oplus[x][self.oplus[y][z]] {
                        return fail("associativity", &[x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn one(&self) -> usize {
        self.neg[self.zero]
    }

    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.neg[self.oplus[self.neg[x]][self.neg[y]]]
    }

    pub fn ominus(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.neg[y])
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus[self.neg[self.oplus[self.neg[x]][y]]][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.neg[self.join(self.neg[x], self.neg[y])]
    }

    /// `x ≤ y` iff `¬x ⊕ y = 1`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.oplus[self.neg[x]][y] == self.one()
    }

    /// `(x ⊖ y) ⊕ (y ⊖ x)`
    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.oplus[self.ominus(x, y)][self.ominus(y, x)]
    }

    pub fn oplus_table(&self) -> &[Vec<usize>] {
        &self.oplus
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }
}
