//! Command implementations behind the `biham` binary. Every command returns
//! a [`Report`] whose JSON and text renderings come from the same value.

pub mod expr;
pub mod registry;

use std::path::{Path, PathBuf};

use biham::constructions::{
    affine_algebra, algebra_ava, deformed_bracket, prop4_pencil, prop7_pencil, product_algebra, secondary_algebra,
    special_affine, truncated_algebra, Endomorphism,
};
use biham::flatness::{dim3_lie_classify, dim3_linear_classify, flatness_test, Dim3LieCase, Verdict};
use biham::liealg::LieAlgebra;
use biham::pencil::Pencil;
use biham::ring::{format_rational, parse_rational, Rational};
use biham::serial::{self, algebra_from_json, algebra_to_json, pencil_from_json, pencil_to_json, to_canonical_string};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NON_FLAT: i32 = 10;
pub const EXIT_INAPPLICABLE: i32 = 20;

/// Budget of random trials when a command has to find a generic point.
pub const POINT_BUDGET: usize = 400;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
        }
    }
}

impl From<biham::Error> for CliError {
    fn from(e: biham::Error) -> Self {
        match e {
            biham::Error::Parse(_) => CliError::Parse(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub body: Value,
    pub exit_code: i32,
}

impl Report {
    fn new(command: impl Into<String>, body: Value, exit_code: i32) -> Self {
        Report { command: command.into(), body, exit_code }
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(&json!({ "command": self.command, "exit_code": self.exit_code, "report": self.body }))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (exit {})\n", self.command, self.exit_code);
        render_text(&self.body, 0, &mut out);
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar_text(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serial::parse_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> CliResult<LieAlgebra> {
    algebra_from_json(&read_json(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Pencil file and its optional `base_point`.
pub fn load_pencil(path: &Path) -> CliResult<(Pencil, Option<Vec<Rational>>)> {
    let v = read_json(path)?;
    let p = pencil_from_json(&v).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let base = match v.get("base_point") {
        None | Some(Value::Null) => None,
        Some(b) => Some(serial::point_from_json(b).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?),
    };
    Ok((p, base))
}

fn rationals(v: &[Rational]) -> Value {
    serial::rationals_to_json(v)
}

fn parse_rat_arg(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

/// Point from `--point`, else the file's base point, else a seeded search.
fn resolve_point(
    p: &Pencil,
    given: Option<&str>,
    base: Option<Vec<Rational>>,
    seed: u64,
) -> CliResult<(Vec<Rational>, &'static str)> {
    let (point, source) = match (given, base) {
        (Some(s), _) => (serial::parse_point(s).map_err(|e| CliError::Usage(format!("--point: {e}")))?, "argument"),
        (None, Some(b)) => (b, "base_point"),
        (None, None) => match p.find_generic_point(POINT_BUDGET, seed)? {
            Some(pt) => (pt, "search"),
            None => return Err(CliError::Usage("no generic point found; pass --point".into())),
        },
    };
    if point.len() != p.num_vars() {
        return Err(CliError::Usage(format!("point has {} coordinates, pencil has dimension {}", point.len(), p.num_vars())));
    }
    Ok((point, source))
}

pub fn cmd_check(path: &Path) -> CliResult<Report> {
    let l = load_algebra(path)?;
    let jac = l.jacobi_check();
    let body = json!({
        "dim": l.dim(),
        "basis": l.labels(),
        "jacobi": serial::jacobi_to_json(&jac),
        "unimodular": l.is_unimodular(),
        "unimodular_ideal": l.unimodular_ideal().iter().map(|v| rationals(v)).collect::<Vec<_>>(),
        "modular_vector": l.modular_vector().to_string(),
        "center": l.center().iter().map(|v| rationals(v)).collect::<Vec<_>>(),
    });
    Ok(Report::new("check", body, if jac.ok { EXIT_OK } else { EXIT_NON_FLAT }))
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Flat => EXIT_OK,
        Verdict::NonFlat => EXIT_NON_FLAT,
        Verdict::Inapplicable => EXIT_INAPPLICABLE,
    }
}

fn even_dimension_report(command: &str, p: &Pencil) -> Report {
    let body = json!({
        "dim": p.dim(),
        "verdict": "inapplicable",
        "detail": format!("only odd dimensions are in scope, got {}", p.dim()),
    });
    Report::new(command, body, EXIT_INAPPLICABLE)
}

pub fn cmd_flatness(path: &Path, point: Option<&str>, seed: u64) -> CliResult<Report> {
    let (p, base) = load_pencil(path)?;
    if p.dim() % 2 == 0 {
        return Ok(even_dimension_report("flatness", &p));
    }
    let (pt, source) = resolve_point(&p, point, base, seed)?;
    let r = flatness_test(&p, &pt)?;
    let mut body = serial::flatness_report_to_json(&r);
    let obj = body.as_object_mut().expect("object");
    obj.insert("kind".into(), json!(p.kind_name()));
    obj.insert("point".into(), rationals(&pt));
    obj.insert("point_source".into(), json!(source));
    obj.insert("lambda_text".into(), json!(r.lambda.as_ref().map(|l| l.to_string())));
    obj.insert("curvature_text".into(), json!(r.curvature.as_ref().map(|c| c.to_string())));
    Ok(Report::new("flatness", body, verdict_exit(r.verdict)))
}

pub fn cmd_genericity(path: &Path, point: Option<&str>, seed: u64) -> CliResult<Report> {
    let (p, base) = load_pencil(path)?;
    if p.dim() % 2 == 0 {
        return Ok(even_dimension_report("genericity", &p));
    }
    let compatible = match p.compatibility_check() {
        Ok(c) => json!(c.ok),
        Err(biham::Error::Unsupported(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let found = match resolve_point(&p, point, base, seed) {
        Ok(x) => Some(x),
        Err(CliError::Usage(msg)) if point.is_none() && msg.starts_with("no generic point") => None,
        Err(e) => return Err(e),
    };
    let Some((pt, source)) = found else {
        let body = json!({ "compatible": compatible, "generic": false, "detail": format!("no generic point in {POINT_BUDGET} trials") });
        return Ok(Report::new("genericity", body, EXIT_NON_FLAT));
    };
    let cert = p.generic_at(&pt)?;
    let generic = cert.generic();
    let body = json!({
        "compatible": compatible,
        "generic": generic,
        "point_source": source,
        "certificate": serial::certificate_to_json(&cert),
    });
    Ok(Report::new("genericity", body, if generic { EXIT_OK } else { EXIT_NON_FLAT }))
}

#[derive(Clone, Debug, Default)]
pub struct ConstructArgs {
    pub kind: String,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub a: Option<String>,
    pub input: Option<PathBuf>,
    pub input2: Option<PathBuf>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    /// Rows separated by `;`, entries by `,`; column `j` is the image of `e_j`.
    pub phi: Option<String>,
}

fn need<'a, T>(v: &'a Option<T>, flag: &str, kind: &str) -> CliResult<&'a T> {
    v.as_ref().ok_or_else(|| CliError::Usage(format!("construct {kind} needs --{flag}")))
}

fn parse_matrix(s: &str) -> CliResult<Vec<Vec<Rational>>> {
    s.split(';')
        .map(|row| serial::parse_point(row).map_err(|e| CliError::Usage(format!("--phi: {e}"))))
        .collect()
}

fn with_provenance(mut v: Value, construction: &str, parameters: Value) -> Value {
    v.as_object_mut()
        .expect("object")
        .insert("provenance".into(), json!({ "construction": construction, "parameters": parameters }));
    v
}

fn forms_for(l: &LieAlgebra, args: &ConstructArgs) -> CliResult<(Vec<Rational>, Vec<Rational>)> {
    let kind = &args.kind;
    let alpha = expr::parse_combination(need(&args.alpha, "alpha", kind)?, l.labels()).map_err(CliError::Usage)?;
    let beta = expr::parse_combination(need(&args.beta, "beta", kind)?, l.labels()).map_err(CliError::Usage)?;
    Ok((alpha, beta))
}

/// The constructed object as canonical JSON with a provenance block.
pub fn cmd_construct(args: &ConstructArgs) -> CliResult<Value> {
    let kind = args.kind.as_str();
    let input_name = |p: &Option<PathBuf>| p.as_ref().map(|x| x.display().to_string());
    let out = match kind {
        "truncated" => {
            let m = *need(&args.m, "m", kind)?;
            with_provenance(algebra_to_json(&truncated_algebra(m)?), "truncated algebra", json!({ "m": m }))
        }
        "secondary" => {
            let l = load_algebra(need(&args.input, "input", kind)?)?;
            with_provenance(
                algebra_to_json(&secondary_algebra(&l)),
                "secondary algebra on A x A x K",
                json!({ "input": input_name(&args.input) }),
            )
        }
        "affine" | "special-affine" => {
            let n = *need(&args.n, "n", kind)?;
            let l = if kind == "affine" { affine_algebra(n)? } else { special_affine(n)? };
            with_provenance(algebra_to_json(&l), &format!("{kind} algebra"), json!({ "n": n }))
        }
        "ava" => {
            let n = *need(&args.n, "n", kind)?;
            let a = parse_rat_arg("a", need(&args.a, "a", kind)?)?;
            with_provenance(
                algebra_to_json(&algebra_ava(n, &a)?),
                "affine algebra extended by e with [id, e] = -a e",
                json!({ "n": n, "a": format_rational(&a) }),
            )
        }
        "product" => {
            let l1 = load_algebra(need(&args.input, "input", kind)?)?;
            let l2 = load_algebra(need(&args.input2, "input2", kind)?)?;
            with_provenance(
                algebra_to_json(&product_algebra(&l1, &l2)),
                "direct product",
                json!({ "input": input_name(&args.input), "input2": input_name(&args.input2) }),
            )
        }
        "deformed" => {
            let l = load_algebra(need(&args.input, "input", kind)?)?;
            let phi = Endomorphism::new(parse_matrix(need(&args.phi, "phi", kind)?)?)?;
            let d = deformed_bracket(&l, &phi)?;
            with_provenance(
                algebra_to_json(&d),
                "Nijenhuis deformation [a,b]_1 = [a,phi b] + [phi a,b] - phi[a,b]",
                json!({ "input": input_name(&args.input), "phi": serial::matrix_to_json(phi.matrix()) }),
            )
        }
        "prop4" => {
            let l = load_algebra(need(&args.input, "input", kind)?)?;
            let (alpha, beta) = forms_for(&l, args)?;
            let c = prop4_pencil(&l, &alpha, &beta)?;
            let mut v = pencil_to_json(&c.pencil);
            let obj = v.as_object_mut().expect("object");
            obj.insert("base_point".into(), serial::point_to_json(&c.base_point));
            obj.insert("gamma".into(), json!(c.gamma.iter().map(|a| rationals(a)).collect::<Vec<_>>()));
            obj.insert("rho".into(), rationals(&c.rho));
            with_provenance(
                v,
                "linear pair on the dual of the secondary algebra from a generic couple",
                json!({ "input": input_name(&args.input), "alpha": rationals(&alpha), "beta": rationals(&beta) }),
            )
        }
        "prop7" => {
            let l = load_algebra(need(&args.input, "input", kind)?)?;
            let (alpha, beta) = forms_for(&l, args)?;
            let c = prop7_pencil(&l, &alpha, &beta)?;
            let mut v = pencil_to_json(&c.pencil);
            v.as_object_mut().expect("object").insert("base_point".into(), serial::point_to_json(&c.base_point));
            with_provenance(
                v,
                "Lie pair on the dual of L x Aff(K) deformed by f1 (x) beta",
                json!({ "input": input_name(&args.input), "alpha": rationals(&alpha), "beta": rationals(&beta) }),
            )
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown construction `{other}` (expected truncated, secondary, affine, special-affine, ava, product, deformed, prop4, prop7)"
            )))
        }
    };
    Ok(out)
}

pub fn cmd_classify3_linear(path: &Path, b2: &str, b3: &str) -> CliResult<Report> {
    let l = load_algebra(path)?;
    let (b2, b3) = (parse_rat_arg("b2", b2)?, parse_rat_arg("b3", b3)?);
    let r = dim3_linear_classify(&l, &b2, &b3)?;
    let mut body = serial::dim3_linear_to_json(&r);
    let verdict = if !r.generic_somewhere {
        Verdict::Inapplicable
    } else if r.flat {
        Verdict::Flat
    } else {
        Verdict::NonFlat
    };
    body.as_object_mut().expect("object").insert("verdict".into(), json!(verdict.as_str()));
    Ok(Report::new("classify3 linear", body, verdict_exit(verdict)))
}

pub fn cmd_classify3_lie(path: &Path, path2: &Path) -> CliResult<Report> {
    let l = load_algebra(path)?;
    let l1 = load_algebra(path2)?;
    let r = dim3_lie_classify(&l, &l1)?;
    let verdict = match r.case {
        Dim3LieCase::Proportional => Verdict::Inapplicable,
        Dim3LieCase::DistinctIdeals => Verdict::Flat,
        Dim3LieCase::Reduced => match &r.normal_form {
            Some(nf) if nf.p.is_zero() => Verdict::Inapplicable,
            _ if r.generic_nonflat => Verdict::NonFlat,
            _ => Verdict::Flat,
        },
    };
    let mut body = serial::dim3_lie_to_json(&r);
    let obj = body.as_object_mut().expect("object");
    obj.insert("verdict".into(), json!(verdict.as_str()));
    if let Some(nf) = &r.normal_form {
        obj.insert("p_text".into(), json!(nf.p.to_string()));
        obj.insert("q_text".into(), json!(nf.q.to_string()));
    }
    Ok(Report::new("classify3 lie", body, verdict_exit(verdict)))
}

pub fn cmd_verify_paper(case: Option<&str>, all: bool) -> CliResult<Report> {
    let ids: Vec<&'static str> = match (case, all) {
        (Some(id), false) => vec![registry::find(id)
            .ok_or_else(|| CliError::Usage(format!("unknown case `{id}` (known: {})", registry::ids().join(", "))))?
            .id],
        (None, true) => registry::ids(),
        _ => return Err(CliError::Usage("verify-paper needs exactly one of --case or --all".into())),
    };
    let results = registry::run(&ids);
    let pass = results.iter().all(|r| r.pass());
    let cases: Vec<Value> = results.iter().map(registry::CaseResult::to_json).collect();
    let mut body = Map::new();
    body.insert("cases".into(), Value::Array(cases));
    body.insert("pass".into(), json!(pass));
    Ok(Report::new("verify-paper", Value::Object(body), if pass { EXIT_OK } else { EXIT_USAGE }))
}
