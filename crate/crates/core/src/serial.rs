//! JSON encodings. Indices in files are 1-based; rationals are strings
//! `"p/q"` or `"p"`; polynomials are lists of `{exp, coef}` terms.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exterior::{Graded, Kind};
use crate::flatness::{Dim3LieReport, Dim3LinearReport, FlatnessReport, Lemma3Report, Obstruction};
use crate::liealg::{GenericCoupleReport, JacobiReport, LieAlgebra};
use crate::pencil::{Compatibility, CompatibilityWitness, GenericityCertificate, Pencil, PencilKind};
use crate::ring::{format_rational, parse_rational, Coeff, Matrix, Poly, RatFunc, Rational, UniPoly};

fn perr(ctx: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{ctx}: {msg}"))
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(ctx, format!("missing field `{key}`")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(ctx, "expected an array"))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(ctx, "expected a non-negative integer"))
}

fn one_based(v: &Value, bound: usize, ctx: &str) -> Result<usize> {
    let i = as_usize(v, ctx)?;
    if i == 0 || i > bound {
        return Err(perr(ctx, format!("index {i} outside 1..={bound}")));
    }
    Ok(i - 1)
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value, ctx: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| perr(ctx, e)),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(perr(ctx, "expected a rational string")),
    }
}

pub fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn rationals_from_json(v: &Value, ctx: &str) -> Result<Vec<Rational>> {
    as_array(v, ctx)?.iter().enumerate().map(|(k, x)| rational_from_json(x, &format!("{ctx}[{k}]"))).collect()
}

pub fn matrix_to_json(m: &Matrix<Rational>) -> Value {
    Value::Array(m.iter().map(|r| rationals_to_json(r)).collect())
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(mono, c)| json!({ "exp": mono.exps(), "coef": rational_to_json(c) }))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value, nvars: usize, ctx: &str) -> Result<Poly> {
    let mut terms = Vec::new();
    for (k, t) in as_array(v, ctx)?.iter().enumerate() {
        let tctx = format!("{ctx}[{k}]");
        let exp: Vec<u32> = as_array(field(t, "exp", &tctx)?, &tctx)?
            .iter()
            .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| perr(&tctx, "bad exponent")))
            .collect::<Result<_>>()?;
        if exp.len() != nvars {
            return Err(perr(&tctx, format!("expected {nvars} exponents, got {}", exp.len())));
        }
        terms.push((exp, rational_from_json(field(t, "coef", &tctx)?, &tctx)?));
    }
    Poly::from_terms(nvars, terms).map_err(|e| perr(ctx, e))
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    json!({ "num": poly_to_json(f.num()), "den": poly_to_json(f.den()) })
}

/// Ascending coefficient list.
pub fn unipoly_to_json(u: &UniPoly) -> Value {
    rationals_to_json(u.coeffs())
}

/// Coefficient rings with a JSON encoding inside exterior elements.
pub trait JsonCoeff: Coeff {
    const KEY: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, nvars: usize, ctx: &str) -> Result<Self>;
}

impl JsonCoeff for Rational {
    const KEY: &'static str = "coef";
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value, _nvars: usize, ctx: &str) -> Result<Self> {
        rational_from_json(v, ctx)
    }
}

impl JsonCoeff for Poly {
    const KEY: &'static str = "poly";
    fn to_json(&self) -> Value {
        poly_to_json(self)
    }
    fn from_json(v: &Value, nvars: usize, ctx: &str) -> Result<Self> {
        poly_from_json(v, nvars, ctx)
    }
}

impl JsonCoeff for RatFunc {
    const KEY: &'static str = "ratfunc";
    fn to_json(&self) -> Value {
        ratfunc_to_json(self)
    }
    fn from_json(v: &Value, nvars: usize, ctx: &str) -> Result<Self> {
        let num = poly_from_json(field(v, "num", ctx)?, nvars, ctx)?;
        let den = poly_from_json(field(v, "den", ctx)?, nvars, ctx)?;
        RatFunc::new(num, den).map_err(|e| perr(ctx, e))
    }
}

pub fn graded_to_json<R: JsonCoeff>(g: &Graded<R>) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .map(|(blade, c)| {
            let idx: Vec<usize> = blade.iter().map(|&i| i as usize + 1).collect();
            let mut t = Map::new();
            t.insert("idx".into(), json!(idx));
            t.insert(R::KEY.into(), c.to_json());
            Value::Object(t)
        })
        .collect();
    json!({ "dim": g.dim(), "degree": g.degree(), "kind": g.kind().as_str(), "terms": terms })
}

/// Polynomial coefficients use `nvars` variables.
pub fn graded_from_json<R: JsonCoeff>(v: &Value, nvars: usize, ctx: &str) -> Result<Graded<R>> {
    let dim = as_usize(field(v, "dim", ctx)?, ctx)?;
    let degree = as_usize(field(v, "degree", ctx)?, ctx)?;
    let kind = match field(v, "kind", ctx)?.as_str() {
        Some("form") => Kind::Form,
        Some("multivector") => Kind::MultiVector,
        _ => return Err(perr(ctx, "kind must be \"form\" or \"multivector\"")),
    };
    let mut terms = Vec::new();
    for (k, t) in as_array(field(v, "terms", ctx)?, ctx)?.iter().enumerate() {
        let tctx = format!("{ctx}.terms[{k}]");
        let idx = as_array(field(t, "idx", &tctx)?, &tctx)?
            .iter()
            .map(|i| one_based(i, dim, &tctx))
            .collect::<Result<Vec<_>>>()?;
        terms.push((idx, R::from_json(field(t, R::KEY, &tctx)?, nvars, &tctx)?));
    }
    Graded::from_terms(kind, dim, degree, terms).map_err(|e| perr(ctx, e))
}

pub fn algebra_to_json(l: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = l
        .brackets()
        .map(|(i, j, v)| {
            let coeffs: Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.vanishes())
                .map(|(k, c)| ((k + 1).to_string(), rational_to_json(c)))
                .collect();
            json!({ "i": i + 1, "j": j + 1, "coeffs": coeffs })
        })
        .collect();
    json!({ "dim": l.dim(), "basis": l.labels(), "brackets": brackets })
}

pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra> {
    algebra_from_json_at(v, "algebra")
}

fn algebra_from_json_at(v: &Value, ctx: &str) -> Result<LieAlgebra> {
    let dim = as_usize(field(v, "dim", ctx)?, &format!("{ctx}.dim"))?;
    let labels = match v.get("basis") {
        None | Some(Value::Null) => None,
        Some(b) => Some(
            as_array(b, &format!("{ctx}.basis"))?
                .iter()
                .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| perr(ctx, "basis names must be strings")))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let mut triples = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (n, b) in as_array(field(v, "brackets", ctx)?, ctx)?.iter().enumerate() {
        let bctx = format!("{ctx}.brackets[{n}]");
        let i = one_based(field(b, "i", &bctx)?, dim, &format!("{bctx}.i"))?;
        let j = one_based(field(b, "j", &bctx)?, dim, &format!("{bctx}.j"))?;
        if i >= j {
            return Err(perr(&bctx, "brackets must have i < j"));
        }
        if !seen.insert((i, j)) {
            return Err(perr(&bctx, "duplicate bracket"));
        }
        let coeffs = field(b, "coeffs", &bctx)?
            .as_object()
            .ok_or_else(|| perr(&bctx, "coeffs must be an object"))?;
        let mut out = vec![Rational::from_integer(0.into()); dim];
        for (k, c) in coeffs {
            let kctx = format!("{bctx}.coeffs.{k}");
            let kk: usize = k.parse().map_err(|_| perr(&kctx, "key must be an index"))?;
            if kk == 0 || kk > dim {
                return Err(perr(&kctx, format!("index {kk} outside 1..={dim}")));
            }
            out[kk - 1] = rational_from_json(c, &kctx)?;
        }
        triples.push((i, j, out));
    }
    LieAlgebra::from_brackets(dim, labels, triples).map_err(|e| perr(ctx, e))
}

pub fn point_to_json(p: &[Rational]) -> Value {
    json!({ "coords": rationals_to_json(p) })
}

pub fn point_from_json(v: &Value) -> Result<Vec<Rational>> {
    rationals_from_json(field(v, "coords", "point")?, "point.coords")
}

/// Comma-separated rationals, e.g. `"0,1/2,-3"`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .enumerate()
        .map(|(k, t)| parse_rational(t.trim()).map_err(|e| perr(&format!("coordinate {}", k + 1), e)))
        .collect()
}

pub fn pencil_to_json(p: &Pencil) -> Value {
    let mut out = json!({
        "dim": p.dim(),
        "kind": p.kind_name(),
        "algebra": Value::Null,
        "cocycle": Value::Null,
        "algebra2": Value::Null,
    });
    match p.kind() {
        PencilKind::LinearPair { algebra, cocycle } => {
            out["algebra"] = algebra_to_json(algebra);
            out["cocycle"] = graded_to_json(cocycle);
        }
        PencilKind::LiePair { algebra, algebra2 } => {
            out["algebra"] = algebra_to_json(algebra);
            out["algebra2"] = algebra_to_json(algebra2);
        }
        PencilKind::Raw => {
            out["lambda"] = graded_to_json(p.lambda());
            out["lambda1"] = graded_to_json(p.lambda1());
        }
    }
    out
}

pub fn pencil_from_json(v: &Value) -> Result<Pencil> {
    let ctx = "pencil";
    let dim = as_usize(field(v, "dim", ctx)?, "pencil.dim")?;
    let kind = field(v, "kind", ctx)?.as_str().ok_or_else(|| perr("pencil.kind", "expected a string"))?;
    let p = match kind {
        "linear_pair" => {
            let a = algebra_from_json_at(field(v, "algebra", ctx)?, "pencil.algebra")?;
            let c: Graded<Rational> = graded_from_json(field(v, "cocycle", ctx)?, 0, "pencil.cocycle")?;
            Pencil::linear_pair(a, c)
        }
        "lie_pair" => {
            let a = algebra_from_json_at(field(v, "algebra", ctx)?, "pencil.algebra")?;
            let b = algebra_from_json_at(field(v, "algebra2", ctx)?, "pencil.algebra2")?;
            Pencil::lie_pair(a, b)
        }
        "raw" => {
            let l = graded_from_json(field(v, "lambda", ctx)?, dim, "pencil.lambda")?;
            let l1 = graded_from_json(field(v, "lambda1", ctx)?, dim, "pencil.lambda1")?;
            Pencil::raw(l, l1)
        }
        other => return Err(perr("pencil.kind", format!("unknown kind `{other}`"))),
    }
    .map_err(|e| perr(ctx, e))?;
    if p.dim() != dim {
        return Err(perr("pencil.dim", format!("declared {dim}, contents have dimension {}", p.dim())));
    }
    Ok(p)
}

pub fn jacobi_to_json(r: &JacobiReport) -> Value {
    let v: Vec<Value> = r
        .violations
        .iter()
        .map(|x| json!({ "i": x.i + 1, "j": x.j + 1, "k": x.k + 1, "defect": rationals_to_json(&x.defect) }))
        .collect();
    json!({ "ok": r.ok, "violations": v })
}

pub fn compatibility_to_json(c: &Compatibility) -> Value {
    let witness = match &c.witness {
        None => Value::Null,
        Some(CompatibilityWitness::CocycleDefect(g)) => json!({ "cocycle_defect": graded_to_json(g) }),
        Some(CompatibilityWitness::Jacobi { bracket, violation }) => json!({
            "jacobi": {
                "bracket": bracket,
                "i": violation.i + 1, "j": violation.j + 1, "k": violation.k + 1,
                "defect": rationals_to_json(&violation.defect),
            }
        }),
        Some(CompatibilityWitness::Integrability { member, form }) => {
            json!({ "integrability": { "member": member, "form": graded_to_json(form) } })
        }
    };
    json!({ "ok": c.ok, "witness": witness })
}

pub fn certificate_to_json(c: &GenericityCertificate) -> Value {
    let polys: Vec<Value> = c
        .t_polynomials
        .iter()
        .map(|(b, u)| json!({ "idx": b.iter().map(|i| i + 1).collect::<Vec<_>>(), "t_poly": unipoly_to_json(u) }))
        .collect();
    json!({
        "point": rationals_to_json(&c.point),
        "generic": c.generic(),
        "leading_ok": c.leading_ok,
        "gcd": c.gcd.as_ref().map(unipoly_to_json),
        "t_polynomials": polys,
    })
}

pub fn flatness_report_to_json(r: &FlatnessReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "reason": r.reason.as_str(),
        "lambda": r.lambda.as_ref().map(graded_to_json),
        "denominator_locus": r.denominator_locus.as_ref().map(poly_to_json),
        "curvature": r.curvature.as_ref().map(graded_to_json),
        "detail": r.detail,
    })
}

pub fn obstruction_to_json(o: &Obstruction) -> Value {
    match o {
        Obstruction::Row(r) => json!({ "row": r + 1 }),
        Obstruction::Point(p) => json!({ "point": rationals_to_json(p) }),
    }
}

fn polys_to_json(v: &[Poly]) -> Value {
    Value::Array(v.iter().map(poly_to_json).collect())
}

pub fn lemma3_report_to_json(r: &Lemma3Report) -> Value {
    json!({
        "applicable": r.applicable,
        "flat": r.flat,
        "casimir": r.casimir.as_deref().map(polys_to_json),
        "x": r.x.as_deref().map(polys_to_json),
        "y": r.y.as_deref().map(polys_to_json),
        "witness": r.witness.as_ref().map(|(i, j, p)| json!({ "i": i + 1, "j": j + 1, "minor": poly_to_json(p) })),
        "detail": r.detail,
    })
}

pub fn generic_couple_to_json(r: &GenericCoupleReport) -> Value {
    let params: Vec<Value> = r
        .degenerate_parameters
        .iter()
        .map(|p| json!({ "value": p.value.describe(), "status": p.status.as_str() }))
        .collect();
    json!({
        "generic": r.generic,
        "forms_generic": r.forms_generic,
        "beta_contact": r.beta_contact,
        "degeneracy": unipoly_to_json(&r.degeneracy),
        "degenerate_parameters": params,
    })
}

pub fn dim3_linear_to_json(r: &Dim3LinearReport) -> Value {
    json!({
        "basis": matrix_to_json(&r.basis),
        "normalized": algebra_to_json(&r.normalized),
        "a": rationals_to_json(&r.a),
        "quadratic": rational_to_json(&r.quadratic),
        "generic_somewhere": r.generic_somewhere,
        "flat": r.flat,
        "identity_multiple": r.identity_multiple,
    })
}

pub fn dim3_lie_to_json(r: &Dim3LieReport) -> Value {
    let nf = r.normal_form.as_ref().map(|n| {
        json!({
            "basis": matrix_to_json(&n.basis),
            "bracket": algebra_to_json(&n.bracket),
            "bracket1": algebra_to_json(&n.bracket1),
            "a": rationals_to_json(&n.a),
            "b": rational_to_json(&n.b),
            "p": poly_to_json(&n.p),
            "q": poly_to_json(&n.q),
            "omega1_is_half_dq": n.omega1_is_half_dq,
        })
    });
    json!({
        "case": r.case.as_str(),
        "swapped": r.swapped,
        "combination": [rational_to_json(&r.combination.0), rational_to_json(&r.combination.1)],
        "normal_form": nf,
        "generic_nonflat": r.generic_nonflat,
        "eigenvector_criterion": r.eigenvector_criterion,
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}
