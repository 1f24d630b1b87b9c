//! Command-line front end: verbs, dispatch and JSON output.
//!
//! Exit codes: 0 success, 2 typed domain error, 3 parse error. Output objects
//! carry "schema": 1 and are rendered with sorted keys.

pub mod parse;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use self::parse::{parse_bipoly, parse_rational, parse_unipoly, ParseError};
use self::render::{render_bi, render_nf, render_uni};
use crate::build::{construct_generic, moebius_apply, solve_parameter, BuildError, MoebiusMap, TargetExtension};
use crate::classify::{obstructions_from, verdict_from, ClassifyError, Outcome};
use crate::cover::{compute_invariants, BranchLocation, BranchPointRecord, CoverError, CoverInvariants};
use crate::exact::{BiPoly, ExactError, NumberField, Rat};
use crate::galois::{group_of_poly, group_over_function_field, specialization_field, GaloisError, GroupId};
use crate::schinzel::{
    cm_curve, conductor_and_root_number, cubic_model, integral_short_model, lawful_evil_report, minimal_model, witness_search,
    SchinzelError, CM_DISCRIMINANTS,
};

pub const SCHEMA: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "genpoly", version, about = "Genericity, branch data and root numbers for one-parameter polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Group, branch points, ramification, genus and regularity of P(T, Y).
    Invariants {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Add decimal approximations (12 significant digits) of branch points.
        #[arg(long)]
        approx: bool,
    },
    /// Galois group over k(T), or of the specialisation at --at.
    Galois {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Rational parameter value or "inf".
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Decide genericity; either one polynomial or --batch FILE with one per line.
    Classify {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long)]
        approx: bool,
    },
    /// Build the canonical generic polynomial for a group.
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Find the smallest-height t0 whose specialisation has the splitting field of --target.
    Solve {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Polynomial in x.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 20)]
        height: i64,
    },
    /// Apply T -> (aT + b)/(cT + d) and compare invariants.
    Moebius {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_hyphen_values = true)]
        map: Vec<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Conductor, root numbers and the quadratic-field criterion for y^2 = Q(x).
    Schinzel {
        #[arg(long, default_value_t = 11)]
        m: i64,
        #[arg(long, default_value_t = 30)]
        d_range: i64,
        /// Cubic Q(x); defaults to the stored curve for m.
        #[arg(long, allow_hyphen_values = true)]
        cubic: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        u0: String,
        #[arg(long, default_value_t = 10)]
        height: i64,
    },
    /// Parse and print in canonical form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        text: String,
        /// Parse a polynomial in x instead of T and Y.
        #[arg(long)]
        curve: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse(m) => json!({"kind": "parse", "message": m}),
            CliError::Domain { kind, message } => json!({"kind": kind, "message": message}),
        }
    }
}

fn domain(kind: &str, message: impl ToString) -> CliError {
    CliError::Domain { kind: kind.into(), message: message.to_string() }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

macro_rules! domain_from {
    ($($t:ty => $kind:literal),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                domain($kind, e)
            }
        })*
    };
}

domain_from!(ClassifyError => "classify", CoverError => "cover", GaloisError => "galois", BuildError => "build",
    SchinzelError => "schinzel", ExactError => "exact");

/// Field names: Q, Q(i), Q(sqrt(d)), Q(zetaN) or Q(zeta_N).
pub fn parse_field(s: &str) -> Result<NumberField, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("unknown field '{s}'; expected Q, Q(i), Q(sqrt(d)) or Q(zetaN)"));
    if t == "Q" {
        return Ok(NumberField::rationals());
    }
    if t == "Q(i)" {
        return Ok(NumberField::gaussian());
    }
    let inner = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    if let Some(d) = inner.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let d: i64 = d.parse().map_err(|_| bad())?;
        return NumberField::quadratic(d).map_err(|e| domain("field", e));
    }
    if let Some(n) = inner.strip_prefix("zeta") {
        let n: u64 = n.trim_start_matches('_').parse().map_err(|_| bad())?;
        return NumberField::cyclotomic(n).map_err(|e| domain("field", e));
    }
    Err(bad())
}

fn render_p(p: &BiPoly) -> String {
    render_bi(p, "T", "Y")
}

fn approx_str(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn branch_json(b: &BranchPointRecord, approx: bool) -> Value {
    let mut m = Map::new();
    match &b.point {
        BranchLocation::Infinity => {
            m.insert("point".into(), json!("infinity"));
        }
        BranchLocation::Finite(a) => {
            m.insert("min_poly".into(), json!(render_uni(&a.minpoly, "T")));
            m.insert("rectangle".into(), serde_json::to_value(&a.rect).expect("rect serialises"));
            if let Some(v) = a.rational_value() {
                m.insert("value".into(), json!(v.to_string()));
            }
            if approx {
                let (re, im) = a.rect.center();
                m.insert("approx".into(), json!(format!("{:.12e} + {:.12e}i", approx_str(&re), approx_str(&im))));
            }
        }
    }
    m.insert("orbit_poly".into(), b.orbit_poly.as_ref().map_or(Value::Null, |f| json!(render_nf(f, "T"))));
    m.insert("e".into(), json!(b.ram_index));
    m.insert("inertia".into(), json!(b.inertia_class.label));
    m.insert("cycle_type".into(), json!(b.inertia_class.cycle_type));
    Value::Object(m)
}

fn invariants_json(inv: &CoverInvariants, approx: bool) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("group".into(), json!(inv.group.group.label()));
    m.insert("order".into(), json!(inv.group.group.order()));
    m.insert("group_certified".into(), json!(inv.group.certified));
    m.insert("r".into(), json!(inv.r));
    m.insert("e".into(), json!(inv.e_tuple));
    m.insert("genus".into(), json!(inv.genus));
    m.insert("geometric_order".into(), json!(inv.geometric_order));
    m.insert("regular".into(), json!(inv.regular.as_str()));
    m.insert("all_branch_points_in_k".into(), json!(inv.all_branch_in_k));
    m.insert("branch_points".into(), Value::Array(inv.branch.iter().map(|b| branch_json(b, approx)).collect()));
    m
}

fn classify_one(text: &str, k: &NumberField, approx: bool) -> Result<Value, CliError> {
    let p = parse_bipoly(text)?;
    let inv = compute_invariants(&p, k)?;
    let obs = obstructions_from(&inv);
    let verdict = verdict_from(inv, k);
    let mut m = invariants_json(&verdict.invariants, approx);
    m.insert("input".into(), json!(render_p(&p)));
    m.insert("field".into(), json!(k.name()));
    m.insert("certified".into(), json!(verdict.certified));
    match &verdict.outcome {
        Outcome::Generic { case, n } => {
            m.insert("verdict".into(), json!("Generic"));
            m.insert("case".into(), json!(case.letter()));
            m.insert("n".into(), json!(n));
            m.insert("failures".into(), json!([]));
        }
        Outcome::NotGeneric { failures } => {
            m.insert("verdict".into(), json!("NotGeneric"));
            m.insert("case".into(), Value::Null);
            m.insert("n".into(), Value::Null);
            let f: Vec<Value> = failures.iter().map(|f| json!({"criterion": f.criterion, "detail": f.detail})).collect();
            m.insert("failures".into(), Value::Array(f));
        }
    }
    match obs {
        Ok(o) => {
            m.insert("obstructions".into(), json!(o.labels.iter().map(|l| l.label()).collect::<Vec<_>>()));
            m.insert("obstruction_witnesses".into(), json!(o.witnesses));
        }
        Err(e) => {
            m.insert("obstructions".into(), Value::Null);
            m.insert("obstruction_error".into(), json!(e.to_string()));
        }
    }
    Ok(Value::Object(m))
}

fn parse_point(s: &str) -> Result<Option<Rat>, CliError> {
    if matches!(s.trim(), "inf" | "infinity" | "oo") {
        Ok(None)
    } else {
        Ok(Some(parse_rational(s)?))
    }
}

fn summary(p: &BiPoly, k: &NumberField) -> Result<Value, CliError> {
    let inv = compute_invariants(p, k)?;
    let v = verdict_from(inv, k);
    let mut e = v.invariants.e_tuple.clone();
    e.sort_unstable();
    Ok(json!({
        "group": v.invariants.group.group.label(),
        "e_sorted": e,
        "genus": v.invariants.genus,
        "verdict": if v.outcome.is_generic() { "Generic" } else { "NotGeneric" },
        "case": v.outcome.case().map(|c| c.letter()),
    }))
}

fn dispatch(verb: &Verb) -> Result<Value, CliError> {
    match verb {
        Verb::Invariants { poly, field, approx } => {
            let k = parse_field(field)?;
            let p = parse_bipoly(poly)?;
            let mut m = invariants_json(&compute_invariants(&p, &k)?, *approx);
            m.insert("input".into(), json!(render_p(&p)));
            m.insert("field".into(), json!(k.name()));
            Ok(Value::Object(m))
        }
        Verb::Galois { poly, field, at } => {
            let k = parse_field(field)?;
            let p = parse_bipoly(poly)?;
            let mut m = Map::new();
            m.insert("input".into(), json!(render_p(&p)));
            m.insert("field".into(), json!(k.name()));
            match at {
                None => {
                    let g = group_over_function_field(&p, &k)?;
                    m.insert("group".into(), json!(g.group.label()));
                    m.insert("order".into(), json!(g.group.order()));
                    m.insert("certified".into(), json!(g.certified));
                }
                Some(s) => {
                    let t0 = parse_point(s)?;
                    let d = specialization_field(&p, t0.as_ref(), &k)?;
                    m.insert("at".into(), json!(t0.map_or("infinity".to_string(), |t| t.to_string())));
                    m.insert("group".into(), json!(d.group.label()));
                    m.insert("order".into(), json!(d.group.order()));
                    m.insert("degree".into(), json!(d.degree));
                    m.insert("quadratic_kernel".into(), json!(d.kernel));
                    m.insert("defining_poly".into(), json!(d.defining_poly.as_ref().map(|f| render_uni(f, "x"))));
                }
            }
            Ok(Value::Object(m))
        }
        Verb::Classify { poly, field, batch, approx } => {
            let k = parse_field(field)?;
            match (poly, batch) {
                (Some(text), None) => classify_one(text, &k, *approx),
                (None, Some(path)) => batch_classify(path, &k, *approx),
                _ => Err(CliError::Parse("classify takes either a polynomial or --batch FILE".into())),
            }
        }
        Verb::Construct { group, field } => {
            let k = parse_field(field)?;
            let g = GroupId::parse(group).ok_or_else(|| CliError::Parse(format!("unknown group '{group}'")))?;
            let p = construct_generic(&g, &k)?;
            let check = summary(&p, &k)?;
            Ok(json!({"group": g.label(), "field": k.name(), "polynomial": render_p(&p), "reclassified": check}))
        }
        Verb::Solve { poly, target, field, height } => {
            let k = parse_field(field)?;
            let p = parse_bipoly(poly)?;
            let f = parse_unipoly(target, "x")?;
            let g = group_of_poly(&k.lift_poly(&f), &k)?.group;
            let t = TargetExtension { defining_poly: f.clone(), expected_group: g.clone() };
            let r = solve_parameter(&p, &t, &k, *height)?;
            Ok(json!({
                "input": render_p(&p),
                "field": k.name(),
                "target": render_uni(&f, "x"),
                "target_group": g.label(),
                "height_bound": height,
                "t0": r.t0.map(|t| t.to_string()),
                "tried": r.tried,
                "skipped_branch": r.skipped_branch,
            }))
        }
        Verb::Moebius { poly, map, field } => {
            let k = parse_field(field)?;
            let p = parse_bipoly(poly)?;
            let e: Vec<Rat> = map.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
            let [a, b, c, d]: [Rat; 4] = e.try_into().map_err(|_| CliError::Parse("--map needs four entries".into()))?;
            let mm = MoebiusMap::new(a, b, c, d)?;
            let q = moebius_apply(&p, &mm);
            let (before, after) = (summary(&p, &k)?, summary(&q, &k)?);
            Ok(json!({
                "input": render_p(&p),
                "field": k.name(),
                "map": mm.to_string(),
                "output": render_p(&q),
                "before": before,
                "after": after,
                "invariants_agree": before == after,
            }))
        }
        Verb::Schinzel { m, d_range, cubic, u0, height } => schinzel(*m, *d_range, cubic.as_deref(), u0, *height),
        Verb::Parse { text, curve } => {
            if *curve {
                let f = parse_unipoly(text, "x")?;
                Ok(json!({"canonical": render_uni(&f, "x"), "degree": f.deg()}))
            } else {
                let p = parse_bipoly(text)?;
                Ok(json!({"canonical": render_p(&p), "deg_t": p.deg_t(), "deg_y": p.deg_y()}))
            }
        }
    }
}

fn schinzel(m: i64, d_range: i64, cubic: Option<&str>, u0: &str, height: i64) -> Result<Value, CliError> {
    if !CM_DISCRIMINANTS.contains(&m) {
        return Err(SchinzelError::UnsupportedM(m).into());
    }
    let q = match cubic {
        Some(s) => parse_unipoly(s, "x")?,
        None => cubic_model(&cm_curve(m)?),
    };
    let u0 = parse_rational(u0)?;
    let (model, scale) = integral_short_model(&q)?;
    let min = minimal_model(&model);
    let data = conductor_and_root_number(&min);
    let report = lawful_evil_report(&min, m, d_range)?;
    let passing: Vec<i64> = report.iter().filter(|x| x.passes).map(|x| x.d).collect();
    let qq = NumberField::rationals();
    let witness = witness_search(&q, &u0, &qq, height).map(|(t, y)| json!({"t": t.to_string(), "y": y.to_string()}));
    let big = |n: BigInt| json!(n.to_string());
    Ok(json!({
        "m": m,
        "cubic": render_uni(&q, "x"),
        "integral_model": model.to_string(),
        "scale": big(scale),
        "minimal_model": min.to_string(),
        "c4": big(min.c4()),
        "c6": big(min.c6()),
        "discriminant": big(min.discriminant()),
        "j_invariant": min.j_invariant().to_string(),
        "conductor": big(data.conductor.clone()),
        "root_number": data.w,
        "partial": data.partial,
        "locals": serde_json::to_value(&data.locals).expect("local data serialises"),
        "d_range": d_range,
        "criterion": format!("d squarefree, 0 < d <= {d_range}, kronecker(d, {m}) = 1; k = Q(sqrt(-d))"),
        "entries": serde_json::to_value(&report).expect("report serialises"),
        "passing_d": passing,
        "note": "W(C/k) is computed for each passing d. Odd rank over k and infinitely many k-points follow only under BSD and are cited, not verified. W(C/L) = +1 for all quadratic L/k is not finitely checkable and is not claimed.",
        "witness": {"u0": u0.to_string(), "height_bound": height, "point": witness},
    }))
}

fn batch_classify(path: &PathBuf, k: &NumberField, approx: bool) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| domain("io", format!("{}: {e}", path.display())))?;
    let mut results = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        results.push(match classify_one(line, k, approx) {
            Ok(v) => v,
            Err(e) => json!({"input": line, "error": e.to_json(), "exit_code": e.exit_code()}),
        });
    }
    Ok(json!({"field": k.name(), "results": results}))
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Invariants { .. } => "invariants",
        Verb::Galois { .. } => "galois",
        Verb::Classify { .. } => "classify",
        Verb::Construct { .. } => "construct",
        Verb::Solve { .. } => "solve",
        Verb::Moebius { .. } => "moebius",
        Verb::Schinzel { .. } => "schinzel",
        Verb::Parse { .. } => "parse",
    }
}

/// Run a parsed command: the JSON document and the exit code.
pub fn run(cli: &Cli) -> (Value, i32) {
    let name = verb_name(&cli.verb);
    let (body, code) = match dispatch(&cli.verb) {
        Ok(Value::Object(m)) => (m, EXIT_OK),
        Ok(other) => ([("result".to_string(), other)].into_iter().collect(), EXIT_OK),
        Err(e) => ([("error".to_string(), e.to_json())].into_iter().collect(), e.exit_code()),
    };
    let mut out = body;
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(name));
    (Value::Object(out), code)
}

/// Parse arguments, run, and render: (stdout text, exit code).
pub fn run_args<I, S>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let (v, code) = run(&cli);
            (serde_json::to_string_pretty(&v).expect("json renders") + "\n", code)
        }
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (e.to_string(), EXIT_OK)
                }
                _ => {
                    let v = json!({"schema": SCHEMA, "error": {"kind": "usage", "message": e.to_string()}});
                    (serde_json::to_string_pretty(&v).expect("json renders") + "\n", EXIT_PARSE)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (Value, i32) {
        let mut v = vec!["genpoly"];
        v.extend_from_slice(args);
        let (s, code) = run_args(v);
        (serde_json::from_str(&s).unwrap(), code)
    }

    #[test]
    fn classify_verbs() {
        let (v, code) = call(&["classify", "Y^3+T*Y+T"]);
        assert_eq!(code, 0);
        assert_eq!(v["verdict"], "Generic");
        assert_eq!(v["case"], "c");
        assert_eq!(v["schema"], 1);
        let (v, code) = call(&["classify", "Y^4-T"]);
        assert_eq!(code, 0);
        assert_eq!(v["verdict"], "NotGeneric");
        assert!(!v["failures"].as_array().unwrap().is_empty());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classify", "2T"]).1, EXIT_PARSE);
        assert_eq!(call(&["classify", "Y^2 - X"]).1, EXIT_PARSE);
        assert_eq!(call(&["classify", "Y^2 - T", "--field", "R"]).1, EXIT_PARSE);
        assert_eq!(call(&["frobnicate"]).1, EXIT_PARSE);
        assert_eq!(call(&["classify", "Y^2 - T^2"]).1, EXIT_DOMAIN);
        assert_eq!(call(&["classify", "2*Y^2 - T"]).1, EXIT_DOMAIN);
        assert_eq!(call(&["construct", "--group", "C4"]).1, EXIT_DOMAIN);
        assert_eq!(call(&["schinzel", "--m", "7"]).1, EXIT_DOMAIN);
        assert_eq!(call(&["moebius", "Y^2 - T", "--map", "1", "2", "2", "4"]).1, EXIT_DOMAIN);
    }

    #[test]
    fn other_verbs() {
        let (v, _) = call(&["construct", "--group", "C4", "--field", "Q(i)"]);
        assert_eq!(v["polynomial"], "Y^4 - T");
        assert_eq!(v["reclassified"]["case"], "a");
        let (v, _) = call(&["solve", "Y^2 - T", "--target", "x^2 - 5"]);
        assert_eq!(v["t0"], "5");
        let (v, _) = call(&["galois", "Y^3 + T*Y + T", "--at", "1"]);
        assert_eq!(v["group"], "D3");
        let (v, _) = call(&["moebius", "Y^3 + T*Y + T", "--map", "2", "1", "1", "-1"]);
        assert_eq!(v["invariants_agree"], true);
        let (v, _) = call(&["parse", "Y^2 - (T^3 - T^2 - 7*T + 41/4)"]);
        assert_eq!(v["canonical"], "Y^2 - T^3 + T^2 + 7*T - 41/4");
    }

    #[test]
    fn schinzel_verb() {
        let (v, code) = call(&["schinzel", "--m", "11", "--d-range", "30"]);
        assert_eq!(code, 0);
        assert_eq!(v["conductor"], "121");
        assert_eq!(v["cubic"], "x^3 - x^2 - 7*x + 41/4");
        let passing: Vec<i64> = v["passing_d"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(&passing[1..3], &[3, 5]);
    }
}
