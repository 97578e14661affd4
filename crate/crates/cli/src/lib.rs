//! The `mvprob` command line, as a library so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 a check failed (the output carries a witness),
//! 2 malformed input, 3 search budget exceeded.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvprob::json::{
    algebra_to_json, dual_to_json, elem_from_arg, elem_to_json, elems_to_json, ideal_to_json, load_algebra, load_json,
    max_space_to_json, probmap_from_json, probmap_to_json, rat_to_json, rats_from_json, rats_to_json, stochmat_from_json,
    stochmat_to_json, table_to_json, verdict_to_json,
};
use mvprob::mv::{identity_check, Algebra, Identity, Verdict};
use mvprob::probmaps::{
    check_axioms, check_basic_bounds, check_characterizations, check_dual_theorem, dual, dual_roundtrip, enumerate_prob_maps,
    from_stochastic, is_extreme, is_mv_hom, to_stochastic, CheckConfig, ProbMap,
};
use mvprob::spectra::{
    ideal_closure, is_semisimple, is_state, max_space, quotient, radical, star_collision, state_decompose, state_from_measure,
    ChangIdeal, Ideal, StateVec,
};
use mvprob::{gamma, seeded, term, Error};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mvprob", version, about = "Exact MV-algebras, states and probability maps")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// chain:k, prod:<base>:n, unit, chang, fincof, free1, pwl or @file.json
    #[arg(long)]
    algebra: String,
}

#[derive(Args, Debug)]
struct MapArg {
    /// Map descriptor as inline JSON or @file.json
    #[arg(long)]
    map: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a term in an algebra.
    Eval {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        term: String,
        /// Variable binding name=value; repeatable.
        #[arg(long = "env")]
        env: Vec<String>,
    },
    /// Check the probability-map axioms and related properties of a map.
    CheckMap {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// List every probability map between two finite algebras.
    EnumerateMaps {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Maximal ideals and the star map.
    Maxspec {
        #[command(flatten)]
        alg: AlgebraArg,
    },
    /// The radical and semisimplicity.
    Radical {
        #[command(flatten)]
        alg: AlgebraArg,
    },
    /// Quotient by the ideal generated by some elements.
    Quotient {
        #[command(flatten)]
        alg: AlgebraArg,
        /// JSON array of generators, or one of zero, radical, whole.
        #[arg(long)]
        ideal: String,
    },
    /// The stochastic matrix of a map between powers of [0,1] or of a chain.
    ToMatrix {
        #[command(flatten)]
        map: MapArg,
    },
    /// The map of [0,1]^n given by a stochastic matrix.
    FromMatrix {
        #[arg(long)]
        matrix: String,
        /// Also apply the map to this vector.
        #[arg(long)]
        apply: Option<String>,
    },
    /// Extremality by the homomorphism test and the polytope-vertex test.
    Extreme {
        #[arg(long, conflicts_with = "map", required_unless_present = "map")]
        matrix: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// The dual family of states and its round trip.
    Dual {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Decompose a state of a finite algebra over its extreme states.
    DecomposeState {
        #[command(flatten)]
        alg: AlgebraArg,
        /// JSON array of rationals in carrier order.
        #[arg(long)]
        state: String,
    },
    /// Rebuild a finite algebra as the unit interval of its enveloping group.
    GammaRoundtrip {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
    },
    /// Check MV1 to MV3.
    Identities {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    failed: bool,
}

impl Report {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            failed: false,
        }
    }

    fn failing(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        v => v.to_string(),
    }
}

fn verdict_cell(v: &Verdict, alg: &Algebra) -> Vec<String> {
    let w = v.witness().map(|w| elems_to_json(alg, w).to_string()).unwrap_or_default();
    vec![v.holds().to_string(), w]
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => 3,
        Error::NotRepresentable(_)
        | Error::NotSemisimple
        | Error::Infeasible(_)
        | Error::NotIdeal(_)
        | Error::NotGoodSequence(_)
        | Error::NotProbabilityMap(_)
        | Error::Internal(_)
        | Error::Unbounded
        | Error::OutsideHull
        | Error::DegenerateVertices => 1,
        _ => 2,
    }
}

fn render(format: Format, r: &Report) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(&r.json)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
                w.write_record(&r.header)?;
                for row in &r.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
                Ok(())
            };
            write(&mut w).map_err(|e| e.to_string())?;
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(report) => match render(cli.format, &report) {
            Ok(out) => Outcome {
                code: if report.failed { 1 } else { 0 },
                stdout: out,
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
        Err(e) => {
            let code = exit_code(&e);
            if code == 2 {
                return Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                };
            }
            let mut body = json!({"error": e.to_string()});
            if let Error::Budget(b) = e {
                body["budget"] = json!(b);
            }
            let report = Report::new(body.clone(), &["error"], vec![vec![e.to_string()]]);
            let stdout = render(cli.format, &report).unwrap_or_default();
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn execute(cli: &Cli) -> mvprob::Result<Report> {
    let cfg = |samples: usize| CheckConfig { samples, seed: cli.seed };
    match &cli.command {
        Command::Eval { alg, term, env } => eval(&load_algebra(&alg.algebra)?, term, env),
        Command::CheckMap { map, samples } => check_map(&probmap_from_json(&load_json(&map.map)?)?, &cfg(*samples)),
        Command::EnumerateMaps { from, to } => enumerate(&load_algebra(from)?, &load_algebra(to)?, cli.budget),
        Command::Maxspec { alg } => maxspec(&load_algebra(&alg.algebra)?),
        Command::Radical { alg } => radical_cmd(&load_algebra(&alg.algebra)?),
        Command::Quotient { alg, ideal } => quotient_cmd(&load_algebra(&alg.algebra)?, ideal),
        Command::ToMatrix { map } => {
            let s = to_stochastic(&probmap_from_json(&load_json(&map.map)?)?)?;
            Ok(Report::new(stochmat_to_json(&s), &["row", "entries"], matrix_rows(&s.rows())))
        }
        Command::FromMatrix { matrix, apply } => from_matrix(matrix, apply.as_deref()),
        Command::Extreme { matrix, map, samples } => {
            let p = match (matrix, map) {
                (Some(m), _) => from_stochastic(&stochmat_from_json(&load_json(m)?)?),
                (None, Some(m)) => probmap_from_json(&load_json(m)?)?,
                (None, None) => return Err(Error::Input("pass --matrix or --map".into())),
            };
            extreme(&p, &cfg(*samples))
        }
        Command::Dual { map, samples } => dual_cmd(&probmap_from_json(&load_json(&map.map)?)?, &cfg(*samples)),
        Command::DecomposeState { alg, state } => decompose(&load_algebra(&alg.algebra)?, state),
        Command::GammaRoundtrip { alg, max_len } => gamma_cmd(&load_algebra(&alg.algebra)?, *max_len),
        Command::Identities { alg, samples } => identities(&load_algebra(&alg.algebra)?, *samples, cli.seed),
    }
}

fn matrix_rows(rows: &[Vec<mvprob::Rat>]) -> Vec<Vec<String>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| vec![i.to_string(), rats_to_json(r).to_string()])
        .collect()
}

fn eval(alg: &Algebra, t: &str, env: &[String]) -> mvprob::Result<Report> {
    let t = term::parse(t)?;
    let mut bindings = BTreeMap::new();
    for b in env {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("binding `{b}` is not name=value")))?;
        bindings.insert(name.trim().to_string(), elem_from_arg(alg, value)?);
    }
    let v = elem_to_json(alg, &term::eval(&t, alg, &bindings)?);
    Ok(Report::new(v.clone(), &["value"], vec![vec![cell(&v)]]))
}

fn check_map(p: &ProbMap, cfg: &CheckConfig) -> mvprob::Result<Report> {
    let m = p.domain();
    let axioms = check_axioms(p, cfg)?;
    let bounds = check_basic_bounds(p, cfg)?;
    let hom = is_mv_hom(p, cfg)?;
    let endpoints = p.apply(&m.zero())? == p.codomain().zero() && p.apply(&m.one())? == p.codomain().one();
    let chars = if endpoints {
        Some(check_characterizations(p, cfg)?)
    } else {
        None
    };
    let chars_json = chars.map(|c| {
        json!({
            "axioms": c.axioms,
            "group_identity": c.group_identity,
            "split": c.split_char,
            "disjoint_additive": c.disjoint_additive,
            "agree": c.agree(),
        })
    });
    let json = json!({
        "probability_map": axioms.holds(),
        "axioms": {
            "p1": verdict_to_json(m, &axioms.p1),
            "p2": verdict_to_json(m, &axioms.p2),
            "p3": verdict_to_json(m, &axioms.p3),
            "p1_prime": verdict_to_json(m, &axioms.p1_prime),
        },
        "characterizations": chars_json,
        "bounds": verdict_to_json(m, &bounds),
        "hom": verdict_to_json(m, &hom),
    });
    let mut rows = Vec::new();
    for (name, v) in [
        ("P1", &axioms.p1),
        ("P2", &axioms.p2),
        ("P3", &axioms.p3),
        ("P1'", &axioms.p1_prime),
        ("bounds", &bounds),
        ("hom", &hom),
    ] {
        let mut row = vec![name.to_string()];
        row.extend(verdict_cell(v, m));
        rows.push(row);
    }
    Ok(Report::new(json, &["check", "holds", "witness"], rows).failing(!axioms.holds()))
}

fn enumerate(m: &Algebra, n: &Algebra, budget: u64) -> mvprob::Result<Report> {
    let maps = enumerate_prob_maps(m, n, budget)?;
    let tables = maps
        .iter()
        .map(|p| Ok(elems_to_json(n, &p.tabulate()?)))
        .collect::<mvprob::Result<Vec<_>>>()?;
    let header: Vec<String> = m.carrier()?.iter().map(|x| cell(&elem_to_json(m, x))).collect();
    let rows = tables
        .iter()
        .map(|t| t.as_array().expect("array").iter().map(cell).collect())
        .collect();
    let json = json!({"count": maps.len(), "maps": tables});
    Ok(Report {
        json,
        header,
        rows,
        failed: false,
    })
}

fn maxspec(alg: &Algebra) -> mvprob::Result<Report> {
    let space = max_space(alg)?;
    let json = max_space_to_json(alg, &space)?;
    let rows = json["points"]
        .as_array()
        .expect("points")
        .iter()
        .map(|p| vec![cell(&p["ideal"]), cell(&p["quotient"])])
        .collect();
    Ok(Report::new(json, &["ideal", "quotient"], rows))
}

fn radical_cmd(alg: &Algebra) -> mvprob::Result<Report> {
    let rad = ideal_to_json(alg, &radical(alg)?);
    let semisimple = is_semisimple(alg)?;
    let collision = star_collision(alg)?.map(|(a, b)| elems_to_json(alg, &[a, b]));
    let row = vec![cell(&rad), semisimple.to_string()];
    let json = json!({"radical": rad, "semisimple": semisimple, "star_collision": collision});
    Ok(Report::new(json, &["radical", "semisimple"], vec![row]))
}

fn parse_ideal(alg: &Algebra, arg: &str) -> mvprob::Result<Ideal> {
    let chang = *alg == Algebra::Chang;
    match arg.trim() {
        "radical" => radical(alg),
        "zero" if chang => Ok(Ideal::Chang(ChangIdeal::Zero)),
        "whole" if chang => Ok(Ideal::Chang(ChangIdeal::Whole)),
        "zero" => ideal_closure(alg, &[]),
        "whole" => ideal_closure(alg, &[alg.one()]),
        _ => {
            let gens = load_json(arg)?;
            let gens = gens
                .as_array()
                .ok_or_else(|| Error::Input("ideal generators must be a JSON array".into()))?;
            let gens = gens
                .iter()
                .map(|g| mvprob::json::elem_from_json(alg, g))
                .collect::<mvprob::Result<Vec<_>>>()?;
            ideal_closure(alg, &gens)
        }
    }
}

fn quotient_cmd(alg: &Algebra, ideal: &str) -> mvprob::Result<Report> {
    let ideal = parse_ideal(alg, ideal)?;
    let q = quotient(alg, &ideal)?;
    let labels = q.table.labels();
    let (projection, rows) = match alg.carrier() {
        Ok(c) => {
            let mut proj = Vec::with_capacity(c.len());
            let mut rows = Vec::with_capacity(c.len());
            for x in &c {
                let e = elem_to_json(alg, x);
                let class = labels[q.project(alg, x)?].clone();
                rows.push(vec![cell(&e), class.clone()]);
                proj.push(json!({"element": e, "class": class}));
            }
            (Value::Array(proj), rows)
        }
        Err(_) => (Value::Null, labels.iter().map(|l| vec![String::new(), l.clone()]).collect()),
    };
    let json = json!({"ideal": ideal_to_json(alg, &ideal), "quotient": table_to_json(&q.table), "projection": projection});
    Ok(Report::new(json, &["element", "class"], rows))
}

fn from_matrix(matrix: &str, apply: Option<&str>) -> mvprob::Result<Report> {
    let s = stochmat_from_json(&load_json(matrix)?)?;
    let p = from_stochastic(&s);
    let mut json = json!({"map": probmap_to_json(&p)});
    let mut rows = matrix_rows(&s.rows());
    if let Some(x) = apply {
        let x = elem_from_arg(p.domain(), x)?;
        let y = elem_to_json(p.codomain(), &p.apply(&x)?);
        rows.push(vec!["value".into(), cell(&y)]);
        json["value"] = y;
    }
    Ok(Report::new(json, &["row", "entries"], rows))
}

fn extreme(p: &ProbMap, cfg: &CheckConfig) -> mvprob::Result<Report> {
    let v = is_extreme(p, cfg)?;
    let mut json = json!({"extreme": v.extreme(), "hom": v.hom, "vertex": v.vertex});
    if !v.hom {
        json["witness"] = verdict_to_json(p.domain(), &is_mv_hom(p, cfg)?)["witness"].clone();
    }
    let row = vec![
        v.extreme().to_string(),
        v.hom.to_string(),
        v.vertex.map(|b| b.to_string()).unwrap_or_default(),
    ];
    Ok(Report::new(json, &["extreme", "hom", "vertex"], vec![row]))
}

fn dual_cmd(p: &ProbMap, cfg: &CheckConfig) -> mvprob::Result<Report> {
    let d = dual(p)?;
    let mut json = json!({"dual": dual_to_json(p, &d), "semisimple": is_semisimple(p.codomain())?});
    if json["semisimple"] == json!(true) {
        let t = check_dual_theorem(p, cfg)?;
        json["roundtrip"] = json!(dual_roundtrip(p)?);
        json["theorem"] = json!({
            "extreme": t.extreme,
            "hom": t.hom,
            "ext_states": t.ext_states,
            "factor": t.factor,
            "agree": t.agree(),
        });
    } else {
        json["roundtrip"] = Value::Null;
        json["theorem"] = Value::Null;
    }
    let rows = json["dual"]["states"]
        .as_array()
        .expect("states")
        .iter()
        .map(|s| {
            vec![
                cell(&s["ideal"]),
                cell(if s["values"].is_null() { &s["weights"] } else { &s["values"] }),
            ]
        })
        .collect();
    let failed = json["roundtrip"] == json!(false) || json["theorem"]["agree"] == json!(false);
    Ok(Report::new(json, &["ideal", "state"], rows).failing(failed))
}

fn decompose(alg: &Algebra, state: &str) -> mvprob::Result<Report> {
    let s = StateVec::new(rats_from_json(&load_json(state)?)?);
    if s.values.len() != alg.carrier()?.len() {
        return Err(Error::Dimension(format!(
            "{} values for a carrier of {}",
            s.values.len(),
            alg.carrier()?.len()
        )));
    }
    if !is_state(alg, &s)? {
        let json = json!({"state": false, "weights": Value::Null});
        return Ok(Report::new(json, &["ideal", "weight"], Vec::new()).failing(true));
    }
    let w = state_decompose(alg, &s)?;
    let roundtrip = state_from_measure(alg, &w)? == s;
    let space = max_space(alg)?;
    let mut weights = Vec::with_capacity(w.len());
    let mut rows = Vec::with_capacity(w.len());
    for (pt, x) in space.points.iter().zip(&w) {
        let ideal = ideal_to_json(alg, &pt.ideal);
        rows.push(vec![cell(&ideal), x.to_string()]);
        weights.push(json!({"ideal": ideal, "weight": rat_to_json(x)}));
    }
    let json = json!({"state": true, "weights": weights, "roundtrip": roundtrip});
    Ok(Report::new(json, &["ideal", "weight"], rows).failing(!roundtrip))
}

fn gamma_cmd(alg: &Algebra, max_len: usize) -> mvprob::Result<Report> {
    let classes = gamma::gamma_interval(alg, max_len)?;
    let iso = gamma::gamma_roundtrip(alg, max_len)?;
    let size = alg.carrier()?.len();
    let labels: Vec<String> = classes.iter().map(|c| c.render()).collect();
    let json = json!({
        "algebra": algebra_to_json(alg),
        "size": size,
        "interval_size": classes.len(),
        "isomorphic": iso.is_some(),
        "isomorphism": iso.as_ref().map(|f| f.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>()),
    });
    let rows = match (&iso, alg.carrier()) {
        (Some(f), Ok(c)) => c
            .iter()
            .zip(f)
            .map(|(x, &i)| vec![cell(&elem_to_json(alg, x)), labels[i].clone()])
            .collect(),
        _ => Vec::new(),
    };
    Ok(Report::new(json, &["element", "class"], rows).failing(iso.is_none()))
}

fn identities(alg: &Algebra, samples: usize, seed: u64) -> mvprob::Result<Report> {
    let mut rng = seeded(seed);
    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut all = true;
    for id in Identity::ALL {
        let v = identity_check(alg, id, samples, &mut rng)?;
        all &= v.holds();
        let mut entry = verdict_to_json(alg, &v);
        entry["identity"] = json!(id.name());
        results.push(entry);
        let mut row = vec![id.name().to_string()];
        row.extend(verdict_cell(&v, alg));
        rows.push(row);
    }
    let json = json!({"algebra": algebra_to_json(alg), "holds": all, "identities": results});
    Ok(Report::new(json, &["identity", "holds", "witness"], rows).failing(!all))
}
