//! The Łukasiewicz term language.
//!
//! Surface syntax, loosest to tightest: `\/`, `/\`, `+`, `-`, `*`, prefix `~`.
//! Binary operators associate to the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::mv::{Algebra, Elem};
use crate::{PwlFn, Rng};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const0,
    Const1,
    Neg(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    Ominus(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BinOp {
    Join,
    Meet,
    Oplus,
    Ominus,
    Odot,
}

impl BinOp {
    const BY_PREC: [BinOp; 5] = [BinOp::Join, BinOp::Meet, BinOp::Oplus, BinOp::Ominus, BinOp::Odot];

    fn prec(self) -> u8 {
        match self {
            BinOp::Join => 1,
            BinOp::Meet => 2,
            BinOp::Oplus => 3,
            BinOp::Ominus => 4,
            BinOp::Odot => 5,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Join => "\\/",
            BinOp::Meet => "/\\",
            BinOp::Oplus => "+",
            BinOp::Ominus => "-",
            BinOp::Odot => "*",
        }
    }

    fn build(self, l: Term, r: Term) -> Term {
        let (l, r) = (Box::new(l), Box::new(r));
        match self {
            BinOp::Join => Term::Join(l, r),
            BinOp::Meet => Term::Meet(l, r),
            BinOp::Oplus => Term::Oplus(l, r),
            BinOp::Ominus => Term::Ominus(l, r),
            BinOp::Odot => Term::Odot(l, r),
        }
    }
}

const PREC_NEG: u8 = 6;
const PREC_ATOM: u8 = 7;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn oplus(l: Term, r: Term) -> Term {
        Term::Oplus(Box::new(l), Box::new(r))
    }

    pub fn odot(l: Term, r: Term) -> Term {
        Term::Odot(Box::new(l), Box::new(r))
    }

    pub fn ominus(l: Term, r: Term) -> Term {
        Term::Ominus(Box::new(l), Box::new(r))
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Box::new(l), Box::new(r))
    }

    fn binary(&self) -> Option<(BinOp, &Term, &Term)> {
        match self {
            Term::Join(l, r) => Some((BinOp::Join, l, r)),
            Term::Meet(l, r) => Some((BinOp::Meet, l, r)),
            Term::Oplus(l, r) => Some((BinOp::Oplus, l, r)),
            Term::Ominus(l, r) => Some((BinOp::Ominus, l, r)),
            Term::Odot(l, r) => Some((BinOp::Odot, l, r)),
            _ => None,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Term::Neg(_) => PREC_NEG,
            Term::Var(_) | Term::Const0 | Term::Const1 => PREC_ATOM,
            t => t.binary().map(|(op, _, _)| op.prec()).unwrap_or(PREC_ATOM),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const0 | Term::Const1 => 0,
            Term::Neg(t) => 1 + t.depth(),
            t => {
                let (_, l, r) = t.binary().expect("binary node");
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const0 | Term::Const1 => {}
            Term::Neg(t) => t.collect_vars(out),
            t => {
                let (_, l, r) = t.binary().expect("binary node");
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, t: &Term, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const0 => write!(f, "0"),
            Term::Const1 => write!(f, "1"),
            Term::Neg(t) => {
                write!(f, "~")?;
                write_child(f, t, t.prec() < PREC_NEG)
            }
            t => {
                let (op, l, r) = t.binary().expect("binary node");
                write_child(f, l, l.prec() < op.prec())?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, r.prec() <= op.prec())
            }
        }
    }
}

pub fn print(t: &Term) -> String {
    t.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Tilde,
    Op(BinOp),
    LParen,
    RParen,
}

fn tokenize(input: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'~' => Tok::Tilde,
            b'+' => Tok::Op(BinOp::Oplus),
            b'-' => Tok::Op(BinOp::Ominus),
            b'*' => Tok::Op(BinOp::Odot),
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 1;
                Tok::Op(BinOp::Meet)
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 1;
                Tok::Op(BinOp::Join)
            }
            b'0' | b'1' if !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') => {
                if c == b'0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(input[start..=i].to_string())
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn binary(&mut self, level: usize) -> std::result::Result<Term, ParseError> {
        if level == BinOp::BY_PREC.len() {
            return self.unary();
        }
        let op = BinOp::BY_PREC[level];
        let mut lhs = self.binary(level + 1)?;
        while self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            let rhs = self.binary(level + 1)?;
            lhs = op.build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Term, ParseError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Tilde => Ok(Term::neg(self.unary()?)),
            Tok::Zero => Ok(Term::Const0),
            Tok::One => Ok(Term::Const1),
            Tok::Ident(v) => Ok(Term::Var(v)),
            Tok::LParen => {
                let t = self.binary(0)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Tok::RParen | Tok::Op(_) => {
                self.pos -= 1;
                Err(self.err("expected a term"))
            }
        }
    }
}

pub fn parse(input: &str) -> std::result::Result<Term, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let t = p.binary(0)?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse(s)
    }
}

pub fn eval(t: &Term, alg: &Algebra, env: &BTreeMap<String, Elem>) -> Result<Elem> {
    match t {
        Term::Var(v) => {
            let x = env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            alg.check(x)?;
            Ok(x.clone())
        }
        Term::Const0 => Ok(alg.zero()),
        Term::Const1 => Ok(alg.one()),
        Term::Neg(s) => alg.neg(&eval(s, alg, env)?),
        Term::Oplus(l, r) => alg.oplus(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Odot(l, r) => alg.odot(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Ominus(l, r) => alg.ominus(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Join(l, r) => alg.join(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Meet(l, r) => alg.meet(&eval(l, alg, env)?, &eval(r, alg, env)?),
    }
}

/// Interprets a term with at most one variable in the free one-generated
/// algebra, where the variable is the identity function.
pub fn free_interpret(t: &Term) -> Result<PwlFn> {
    let vars = t.variables();
    if vars.len() > 1 {
        return Err(Error::TooManyVariables(vars.into_iter().collect()));
    }
    Ok(interpret(t))
}

fn interpret(t: &Term) -> PwlFn {
    match t {
        Term::Var(_) => PwlFn::identity(),
        Term::Const0 => PwlFn::zero(),
        Term::Const1 => PwlFn::one(),
        Term::Neg(s) => interpret(s).neg(),
        Term::Oplus(l, r) => interpret(l).oplus(&interpret(r)),
        Term::Odot(l, r) => interpret(l).odot(&interpret(r)),
        Term::Ominus(l, r) => interpret(l).odot(&interpret(r).neg()),
        Term::Join(l, r) => interpret(l).join(&interpret(r)),
        Term::Meet(l, r) => interpret(l).meet(&interpret(r)),
    }
}

/// A random term of depth at most `depth` over `vars`.
pub fn random_term(rng: &mut Rng, depth: usize, vars: &[&str]) -> Term {
    let atom = |rng: &mut Rng| -> Term {
        match rng.gen_range(0..vars.len() + 2) {
            0 => Term::Const0,
            1 => Term::Const1,
            i => Term::var(vars[i - 2]),
        }
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..7) {
        0 => atom(rng),
        1 => Term::neg(random_term(rng, depth - 1, vars)),
        k => {
            let l = random_term(rng, depth - 1, vars);
            let r = random_term(rng, depth - 1, vars);
            BinOp::BY_PREC[k - 2].build(l, r)
        }
    }
}
