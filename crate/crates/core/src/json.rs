//! JSON forms of algebras, elements, piecewise-linear functions, probability
//! maps, stochastic matrices and the spectral objects.
//!
//! Rationals are always written as `"p/q"` strings. Objects are built as
//! [`serde_json::Value`], whose maps keep keys sorted.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::parse_rat;
use crate::mcnaughton::Piece;
use crate::mv::{Algebra, ChangElem, Elem, FinCofSet, FiniteTable, Verdict};
use crate::probmaps::{Body, DualMap, DualState, MapRule, ProbMap, StochMat};
use crate::spectra::{ChangIdeal, Ideal, MaxSpace};
use crate::term::{free_interpret, parse};
use crate::{PwlFn, Rat};

fn bad(what: &str, v: &Value) -> Error {
    Error::Input(format!("expected {what}, found {v}"))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rats_to_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_to_json).collect())
}

/// A `"p/q"` string or an integer literal.
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => parse_rat(&n.to_string()),
        _ => Err(bad("a rational", v)),
    }
}

pub fn rats_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| bad("an array of rationals", v))?
        .iter()
        .map(rat_from_json)
        .collect()
}

fn u64_from_json(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad("a nonnegative integer", v))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Input(format!("missing field `{key}`")))
}

// ---------------------------------------------------------------- algebras

/// Command-line mini-syntax: `unit`, `chain:k`, `prod:<base>:n`, `chang`,
/// `fincof`, `free1`, `pwl`.
pub fn parse_algebra_spec(spec: &str) -> Result<Algebra> {
    let s = spec.trim();
    let bad = || Error::Input(format!("`{s}` is not an algebra spec"));
    Ok(match s {
        "unit" => Algebra::UnitInterval,
        "chang" => Algebra::Chang,
        "fincof" => Algebra::FinCof,
        "free1" => Algebra::Free1,
        "pwl" => Algebra::Pwl,
        _ => {
            if let Some(k) = s.strip_prefix("chain:") {
                let k: u32 = k.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                Algebra::Chain(k)
            } else if let Some(rest) = s.strip_prefix("prod:") {
                let (base, n) = rest.rsplit_once(':').ok_or_else(bad)?;
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Algebra::product(parse_algebra_spec(base)?, n)
            } else {
                return Err(bad());
            }
        }
    })
}

/// A mini-syntax spec, or `@path` to a JSON descriptor.
pub fn load_algebra(spec: &str) -> Result<Algebra> {
    match spec.strip_prefix('@') {
        Some(path) => algebra_from_json(&read_json_file(Path::new(path))?),
        None => parse_algebra_spec(spec),
    }
}

pub fn read_json_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON, or `@path` to a JSON file.
pub fn load_json(arg: &str) -> Result<Value> {
    match arg.strip_prefix('@') {
        Some(path) => read_json_file(Path::new(path)),
        None => serde_json::from_str(arg).map_err(|e| Error::Input(format!("invalid JSON: {e}"))),
    }
}

pub fn algebra_to_json(alg: &Algebra) -> Value {
    match alg {
        Algebra::UnitInterval => json!({"kind": "unit"}),
        Algebra::Chain(k) => json!({"kind": "chain", "k": k}),
        Algebra::Product(base, n) => json!({"kind": "product", "base": algebra_to_json(base), "arity": n}),
        Algebra::Chang => json!({"kind": "chang"}),
        Algebra::FinCof => json!({"kind": "fincof"}),
        Algebra::Free1 => json!({"kind": "free1"}),
        Algebra::Pwl => json!({"kind": "pwl"}),
        Algebra::Table(t) => table_to_json(t),
    }
}

pub fn table_to_json(t: &FiniteTable) -> Value {
    json!({"kind": "table", "carrier": t.labels(), "oplus": t.oplus_table(), "neg": t.neg_table()})
}

/// The descriptor objects above; a bare string is read as mini-syntax.
pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    if let Value::String(s) = v {
        return parse_algebra_spec(s);
    }
    let obj = v.as_object().ok_or_else(|| bad("an algebra descriptor", v))?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| bad("a string kind", v))?;
    Ok(match kind {
        "unit" => Algebra::UnitInterval,
        "chain" => {
            let k = u64_from_json(field(obj, "k")?)?;
            let k = u32::try_from(k)
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| Error::Input(format!("chain index {k}")))?;
            Algebra::Chain(k)
        }
        "product" => {
            let n = u64_from_json(field(obj, "arity")?)? as usize;
            if n == 0 {
                return Err(Error::Input("product of arity 0".into()));
            }
            Algebra::product(algebra_from_json(field(obj, "base")?)?, n)
        }
        "chang" => Algebra::Chang,
        "fincof" => Algebra::FinCof,
        "free1" => Algebra::Free1,
        "pwl" => Algebra::Pwl,
        "table" => Algebra::table(table_from_json(obj)?),
        _ => return Err(Error::Input(format!("unknown algebra kind `{kind}`"))),
    })
}

fn table_from_json(obj: &Map<String, Value>) -> Result<FiniteTable> {
    let carrier = field(obj, "carrier")?;
    let labels: Vec<String> = carrier
        .as_array()
        .ok_or_else(|| bad("a carrier array", carrier))?
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(bad("a carrier label", l)),
        })
        .collect::<Result<_>>()?;
    let index = |v: &Value| -> Result<usize> {
        match v {
            Value::Number(n) => n.as_u64().map(|i| i as usize).ok_or_else(|| bad("an index", v)),
            Value::String(s) => labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Input(format!("unknown label `{s}`"))),
            _ => Err(bad("an index or label", v)),
        }
    };
    let rows = field(obj, "oplus")?;
    let oplus = rows
        .as_array()
        .ok_or_else(|| bad("an oplus table", rows))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("a table row", r))?
                .iter()
                .map(index)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let neg = field(obj, "neg")?;
    let neg = neg
        .as_array()
        .ok_or_else(|| bad("a negation table", neg))?
        .iter()
        .map(index)
        .collect::<Result<Vec<_>>>()?;
    FiniteTable::new(labels, oplus, neg)
}

// ---------------------------------------------------------------- elements

pub fn pwl_to_json(f: &PwlFn) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|p| json!({"slope": rat_to_json(&p.slope), "intercept": rat_to_json(&p.intercept)}))
        .collect();
    json!({"breakpoints": rats_to_json(f.breakpoints()), "pieces": pieces})
}

pub fn pwl_from_json(v: &Value) -> Result<PwlFn> {
    let obj = v.as_object().ok_or_else(|| bad("a piecewise-linear function", v))?;
    let breakpoints = rats_from_json(field(obj, "breakpoints")?)?;
    let pieces = field(obj, "pieces")?;
    let pieces = pieces
        .as_array()
        .ok_or_else(|| bad("an array of pieces", pieces))?
        .iter()
        .map(|p| {
            let o = p.as_object().ok_or_else(|| bad("a piece", p))?;
            Ok(Piece::new(
                rat_from_json(field(o, "slope")?)?,
                rat_from_json(field(o, "intercept")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    PwlFn::new(breakpoints, pieces)
}

fn set_to_json(s: &FinCofSet) -> Value {
    match s {
        FinCofSet::Finite(a) => json!({"finite": a}),
        FinCofSet::Cofinite(a) => json!({"cofinite": a}),
    }
}

/// Table elements are written by label.
pub fn elem_to_json(alg: &Algebra, x: &Elem) -> Value {
    match x {
        Elem::Rat(r) => rat_to_json(r),
        Elem::Tuple(xs) => {
            let base = match alg {
                Algebra::Product(b, _) => b.as_ref(),
                other => other,
            };
            Value::Array(xs.iter().map(|e| elem_to_json(base, e)).collect())
        }
        Elem::Chang(ChangElem::Fin(n)) => json!({"fin": n}),
        Elem::Chang(ChangElem::Coinf(n)) => json!({"coinf": n}),
        Elem::Set(s) => set_to_json(s),
        Elem::Fn(f) => pwl_to_json(f),
        Elem::Index(i) => match alg {
            Algebra::Table(t) => t
                .labels()
                .get(*i)
                .map(|l| Value::String(l.clone()))
                .unwrap_or_else(|| json!(i)),
            _ => json!(i),
        },
    }
}

pub fn elems_to_json(alg: &Algebra, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem_to_json(alg, x)).collect())
}

/// Reads an element of `alg` and checks membership. Elements of `free1` and
/// `pwl` may also be given as one-variable terms.
pub fn elem_from_json(alg: &Algebra, v: &Value) -> Result<Elem> {
    let x = match alg {
        Algebra::UnitInterval | Algebra::Chain(_) => Elem::Rat(rat_from_json(v)?),
        Algebra::Product(base, _) => {
            let xs = v.as_array().ok_or_else(|| bad("a tuple", v))?;
            Elem::Tuple(xs.iter().map(|e| elem_from_json(base, e)).collect::<Result<_>>()?)
        }
        Algebra::Chang => {
            let obj = v.as_object().ok_or_else(|| bad("{\"fin\": n} or {\"coinf\": n}", v))?;
            match (obj.get("fin"), obj.get("coinf"), obj.len()) {
                (Some(n), None, 1) => Elem::Chang(ChangElem::Fin(u64_from_json(n)?)),
                (None, Some(n), 1) => Elem::Chang(ChangElem::Coinf(u64_from_json(n)?)),
                _ => return Err(bad("{\"fin\": n} or {\"coinf\": n}", v)),
            }
        }
        Algebra::FinCof => {
            let obj = v
                .as_object()
                .ok_or_else(|| bad("{\"finite\": [..]} or {\"cofinite\": [..]}", v))?;
            let members = |m: &Value| -> Result<Vec<u64>> {
                m.as_array()
                    .ok_or_else(|| bad("an array of naturals", m))?
                    .iter()
                    .map(u64_from_json)
                    .collect()
            };
            match (obj.get("finite"), obj.get("cofinite"), obj.len()) {
                (Some(m), None, 1) => Elem::Set(FinCofSet::finite(members(m)?)),
                (None, Some(m), 1) => Elem::Set(FinCofSet::cofinite(members(m)?)),
                _ => return Err(bad("{\"finite\": [..]} or {\"cofinite\": [..]}", v)),
            }
        }
        Algebra::Free1 | Algebra::Pwl => match v {
            Value::String(s) => Elem::Fn(free_interpret(&parse(s)?)?),
            _ => Elem::Fn(pwl_from_json(v)?),
        },
        Algebra::Table(t) => match v {
            Value::String(s) => Elem::Index(
                t.label_index(s)
                    .ok_or_else(|| Error::Input(format!("`{s}` is not a label of {alg}")))?,
            ),
            Value::Number(n) => Elem::Index(n.as_u64().ok_or_else(|| bad("an index", v))? as usize),
            _ => return Err(bad("a table label", v)),
        },
    };
    alg.check(&x)?;
    Ok(x)
}

/// Command-line element literal: JSON when it parses, otherwise a bare
/// string (so `1/4` and `x \/ ~x` need no quoting).
pub fn elem_from_arg(alg: &Algebra, arg: &str) -> Result<Elem> {
    let v = serde_json::from_str(arg).unwrap_or_else(|_| Value::String(arg.trim().to_string()));
    elem_from_json(alg, &v)
}

pub fn verdict_to_json(alg: &Algebra, v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"holds": true}),
        Verdict::Fails(w) => json!({"holds": false, "witness": elems_to_json(alg, w)}),
    }
}

// ---------------------------------------------------------------- maps

pub fn stochmat_to_json(s: &StochMat) -> Value {
    let rows: Vec<Value> = s.rows().iter().map(|r| rats_to_json(r)).collect();
    json!({"n": s.order(), "rows": rows})
}

/// `{"n": .., "rows": [..]}` or a bare array of rows.
pub fn stochmat_from_json(v: &Value) -> Result<StochMat> {
    let rows = match v {
        Value::Array(_) => v,
        Value::Object(obj) => field(obj, "rows")?,
        _ => return Err(bad("a stochastic matrix", v)),
    };
    let rows = rows
        .as_array()
        .ok_or_else(|| bad("an array of rows", rows))?
        .iter()
        .map(rats_from_json)
        .collect::<Result<Vec<_>>>()?;
    let s = StochMat::new(rows)?;
    if let Some(n) = v.get("n") {
        if u64_from_json(n)? as usize != s.order() {
            return Err(Error::Dimension(format!("declared order {n} but {} rows", s.order())));
        }
    }
    Ok(s)
}

fn rule_to_json(rule: &MapRule) -> Value {
    match rule {
        MapRule::Identity => json!("identity"),
        MapRule::ExamplePm => json!("example_pm"),
        MapRule::Reflect => json!("reflect"),
        MapRule::UniformFinCof => json!("uniform_fincof"),
        MapRule::ConstantHom(t) => json!({"constant_hom": rat_to_json(t)}),
        MapRule::Stochastic(s) => json!({"stochastic": stochmat_to_json(s)}),
        MapRule::Convex(alpha, p, q) => {
            json!({"convex": {"alpha": rat_to_json(alpha), "p": probmap_to_json(p), "q": probmap_to_json(q)}})
        }
    }
}

pub fn probmap_to_json(p: &ProbMap) -> Value {
    let mut obj = Map::new();
    obj.insert("domain".into(), algebra_to_json(p.domain()));
    obj.insert("codomain".into(), algebra_to_json(p.codomain()));
    match p.body() {
        Body::Table(t) => obj.insert("table".into(), elems_to_json(p.codomain(), t)),
        Body::Rule(r) => obj.insert("rule".into(), rule_to_json(r)),
    };
    Value::Object(obj)
}

/// Reads a map. Accepted shapes:
/// `{"domain", "codomain", "table": [..]}` with values in carrier order,
/// `{"rule": "example_pm" | "reflect" | "uniform_fincof"}`,
/// `{"rule": {"constant_hom": "t"}}`, `{"rule": "identity", "domain"}`,
/// `{"rule": {"stochastic": matrix}}` or `{"stochastic": matrix}`, and
/// `{"rule": {"convex": {"alpha", "p", "q"}}}`.
pub fn probmap_from_json(v: &Value) -> Result<ProbMap> {
    let obj = v.as_object().ok_or_else(|| bad("a probability map", v))?;
    if let Some(s) = obj.get("stochastic") {
        return Ok(crate::probmaps::from_stochastic(&stochmat_from_json(s)?));
    }
    let algebra = |key: &str| obj.get(key).map(algebra_from_json).transpose();
    let (domain, codomain) = (algebra("domain")?, algebra("codomain")?);
    let p = if let Some(table) = obj.get("table") {
        let (Some(m), Some(n)) = (domain.clone(), codomain.clone()) else {
            return Err(Error::Input("a table map needs `domain` and `codomain`".into()));
        };
        let values = table.as_array().ok_or_else(|| bad("an array of values", table))?;
        ProbMap::table(
            m,
            n.clone(),
            values.iter().map(|x| elem_from_json(&n, x)).collect::<Result<_>>()?,
        )?
    } else {
        let rule = field(obj, "rule")?;
        match rule {
            Value::String(name) => match name.as_str() {
                "example_pm" => ProbMap::example_pm(),
                "reflect" => ProbMap::reflect(),
                "uniform_fincof" => ProbMap::uniform_fincof(),
                "identity" => ProbMap::identity(domain.clone().ok_or_else(|| Error::Input("identity needs `domain`".into()))?),
                _ => return Err(Error::Input(format!("unknown rule `{name}`"))),
            },
            Value::Object(r) if r.len() == 1 => {
                let (key, arg) = r.iter().next().expect("one entry");
                match key.as_str() {
                    "constant_hom" => ProbMap::constant_hom(rat_from_json(arg)?)?,
                    "stochastic" => crate::probmaps::from_stochastic(&stochmat_from_json(arg)?),
                    "convex" => {
                        let c = arg.as_object().ok_or_else(|| bad("a convex combination", arg))?;
                        let (p, q) = (probmap_from_json(field(c, "p")?)?, probmap_from_json(field(c, "q")?)?);
                        ProbMap::convex(rat_from_json(field(c, "alpha")?)?, &p, &q)?
                    }
                    _ => return Err(Error::Input(format!("unknown rule `{key}`"))),
                }
            }
            _ => return Err(bad("a rule", rule)),
        }
    };
    for (given, actual, key) in [(&domain, p.domain(), "domain"), (&codomain, p.codomain(), "codomain")] {
        if given.as_ref().is_some_and(|g| g != actual) {
            return Err(Error::Input(format!("{key} does not match the rule, which acts on {actual}")));
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------- spectra

pub fn ideal_to_json(alg: &Algebra, ideal: &Ideal) -> Value {
    match ideal {
        Ideal::Finite(m) => match alg.carrier() {
            Ok(c) => elems_to_json(alg, &m.iter().map(|&i| c[i].clone()).collect::<Vec<_>>()),
            Err(_) => json!(m),
        },
        Ideal::Chang(ChangIdeal::Zero) => json!("zero"),
        Ideal::Chang(ChangIdeal::Radical) => json!("radical"),
        Ideal::Chang(ChangIdeal::Whole) => json!("whole"),
        Ideal::Coordinate(i) => json!({"coordinate": i}),
        Ideal::Zero => json!("zero"),
    }
}

pub fn max_space_to_json(alg: &Algebra, space: &MaxSpace) -> Result<Value> {
    let mut points = Vec::with_capacity(space.len());
    for pt in &space.points {
        let quotient = match pt.chain {
            Some(k) => algebra_to_json(&Algebra::Chain(k)),
            None => algebra_to_json(&Algebra::UnitInterval),
        };
        points.push(json!({"ideal": ideal_to_json(alg, &pt.ideal), "quotient": quotient}));
    }
    let mut out = json!({"count": space.len(), "points": points});
    if let Ok(c) = alg.carrier() {
        let star: Vec<Value> = c
            .iter()
            .map(|x| Ok(json!({"element": elem_to_json(alg, x), "star": rats_to_json(&space.star(alg, x)?)})))
            .collect::<Result<_>>()?;
        out["star"] = Value::Array(star);
    }
    Ok(out)
}

pub fn dual_to_json(p: &ProbMap, d: &DualMap) -> Value {
    let states: Vec<Value> = d
        .index
        .iter()
        .zip(&d.states)
        .map(|(ideal, s)| {
            let ideal = ideal_to_json(p.codomain(), ideal);
            match s {
                DualState::Table(t) => json!({"ideal": ideal, "values": rats_to_json(&t.values)}),
                DualState::Linear(w) => json!({"ideal": ideal, "weights": rats_to_json(w)}),
            }
        })
        .collect();
    json!({"states": states})
}
