//! Golden registry: each case rebuilds its objects from scratch and compares
//! the rendered facts byte-for-byte against stored strings.

use biham::constructions::*;
use biham::flatness::{dim3_lie_classify, dim3_linear_classify, flatness_test, lemma3_test, solve_lambda};
use biham::pencil::{Param, Pencil};
use biham::ring::{format_rational, rat, ratio, Poly, RatFunc, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

type Facts = Vec<(&'static str, String)>;

pub struct CaseRecord {
    pub id: &'static str,
    /// What the case reproduces.
    pub provenance: &'static str,
    /// Construction parameters as JSON text.
    pub inputs: &'static str,
    pub expected: &'static [(&'static str, &'static str)],
    compute: fn() -> Result<Facts, biham::Error>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactResult {
    pub name: String,
    pub expected: String,
    pub actual: Option<String>,
}

impl FactResult {
    pub fn pass(&self) -> bool {
        self.actual.as_deref() == Some(self.expected.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub id: &'static str,
    pub provenance: &'static str,
    pub inputs: &'static str,
    pub facts: Vec<FactResult>,
    pub error: Option<String>,
}

impl CaseResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.facts.iter().all(FactResult::pass)
    }

    pub fn to_json(&self) -> Value {
        let inputs: Value = serde_json::from_str(self.inputs).unwrap_or(Value::Null);
        json!({
            "case_id": self.id,
            "provenance": self.provenance,
            "inputs": inputs,
            "pass": self.pass(),
            "error": self.error,
            "facts": self.facts.iter().map(|f| json!({
                "name": f.name,
                "expected": f.expected,
                "actual": f.actual,
                "pass": f.pass(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn unit(m: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[k] = Rational::one();
    v
}

fn vec_str(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn vecs_str(v: &[Vec<Rational>]) -> String {
    format!("[{}]", v.iter().map(|x| vec_str(x)).collect::<Vec<_>>().join(", "))
}

fn verdict(p: &Pencil, pt: &[Rational]) -> Result<String, biham::Error> {
    Ok(flatness_test(p, pt)?.verdict.as_str().to_string())
}

fn lemma3_verdict(p: &Pencil, pt: &[Rational]) -> Result<String, biham::Error> {
    let r = lemma3_test(p, pt)?;
    Ok(match (r.applicable, r.flat) {
        (false, _) => "inapplicable",
        (true, true) => "flat",
        (true, false) => "non_flat",
    }
    .to_string())
}

fn lie_pair_k5() -> Result<Facts, biham::Error> {
    let p = nowhere_flat_lie_pair();
    let sol = solve_lambda(p.omega(), p.omega1(), None)?;
    Ok(vec![
        ("compatible", p.compatibility_check()?.ok.to_string()),
        ("omega", p.omega().to_string()),
        ("omega1", p.omega1().to_string()),
        ("d_omega", p.omega().d()?.to_string()),
        ("d_omega1", p.omega1().d()?.to_string()),
        ("lambda_exists", sol.found.to_string()),
        ("verdict_at_1_1_1_0_0", verdict(&p, &ints(&[1, 1, 1, 0, 0]))?),
    ])
}

fn flat_linear_pair_k5() -> Result<Facts, biham::Error> {
    let (p, pt) = flat_linear_pair();
    let mut facts = vec![
        ("generic_at_base", p.generic_at(&pt)?.generic().to_string()),
        ("verdict_at_base", verdict(&p, &pt)?),
        ("lemma3_at_base", lemma3_verdict(&p, &pt)?),
    ];
    let z = Poly::zero(5);
    for (a, names) in [(rat(1), ["casimir_a1", "field_a1", "verdict_a1"]), (rat(2), ["casimir_a2", "field_a2", "verdict_a2"])] {
        let q = p.shift_second(&a, &pt)?;
        let cas = q.casimirs_at(&pt, &Param::Infinity)?;
        let c = &cas[0];
        let k = c[4].clone();
        let c: Vec<Rational> = c.iter().map(|x| x / &k).collect();
        let lifted: Vec<Poly> = c.iter().map(|x| Poly::constant(5, x.clone())).collect();
        let field = q.lambda().contract_bivector(&lifted, &z).eval(&pt);
        facts.push((names[0], vec_str(&c)));
        facts.push((names[1], vec_str(&field.components(&Rational::zero()))));
        facts.push((names[2], verdict(&q, &pt)?));
    }
    Ok(facts)
}

fn truncated_linear_pair() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    for (m, names) in [
        (5usize, ["de5", "de4", "generic_m5", "lemma3_m5", "verdict_m5"]),
        (7, ["de7", "de6", "generic_m7", "lemma3_m7", "verdict_m7"]),
    ] {
        let l = truncated_algebra(m)?;
        let dm = l.ce_d(&l.dual_form(&unit(m, m - 1)))?;
        let dm1 = l.ce_d(&l.dual_form(&unit(m, m - 2)))?;
        facts.push((names[0], dm.to_string()));
        facts.push((names[1], dm1.to_string()));
        let p = Pencil::linear_pair(l, dm)?;
        let pt = unit(m, m - 2);
        facts.push((names[2], p.generic_at(&pt)?.generic().to_string()));
        facts.push((names[3], lemma3_verdict(&p, &pt)?));
        facts.push((names[4], verdict(&p, &pt)?));
    }
    Ok(facts)
}

fn dim3_linear_grid() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    let (mut flat, mut nonflat, mut degenerate, mut agree) = (0, 0, 0, 0);
    for (_, l) in dim3_catalog() {
        let [a22, a23, a32, a33] = [l.c(0, 1, 1), l.c(0, 1, 2), l.c(0, 2, 1), l.c(0, 2, 2)];
        for b2 in -2..=2i64 {
            for b3 in -2..=2i64 {
                let (b2, b3) = (rat(b2), rat(b3));
                let r = dim3_linear_classify(&l, &b2, &b3)?;
                let q = &a32 * &b2 * &b2 + (&a33 - &a22) * &b2 * &b3 - &a23 * &b3 * &b3;
                if !r.generic_somewhere {
                    degenerate += 1;
                } else if r.flat {
                    flat += 1;
                } else {
                    nonflat += 1;
                }
                if r.flat == q.is_zero() {
                    agree += 1;
                }
            }
        }
    }
    facts.push(("agreement", format!("{agree}/125")));
    facts.push(("counts", format!("flat {flat}, non_flat {nonflat}, degenerate {degenerate}")));
    let l = three_dim_algebra(&rat(1), &rat(0), &rat(0), &rat(2));
    let r = dim3_linear_classify(&l, &rat(1), &rat(1))?;
    let sol = solve_lambda(r.pencil.omega(), r.pencil.omega1(), None)?;
    let lambda = sol.lambda.ok_or_else(|| biham::Error::SearchFailed("no lambda".into()))?;
    facts.push(("lambda_diag_1_2_b_1_1", lambda.to_string()));
    facts.push(("d_lambda_diag_1_2_b_1_1", lambda.d()?.to_string()));
    Ok(facts)
}

fn dim3_lie_normal_form() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    for (a, b, names) in [
        ([1i64, 0, 1, 1], 0i64, ["p_jordan_b0", "q_jordan_b0", "f_jordan_b0", "nonflat_jordan_b0"]),
        ([1, 0, 0, 1], 2, ["p_scalar_b2", "q_scalar_b2", "f_scalar_b2", "nonflat_scalar_b2"]),
    ] {
        let l = three_dim_algebra(&rat(a[0]), &rat(a[1]), &rat(a[2]), &rat(a[3]));
        let l1 = three_dim_algebra(&rat(0), &rat(1), &rat(b), &rat(0));
        let r = dim3_lie_classify(&l, &l1)?;
        let nf = r.normal_form.as_ref().ok_or_else(|| biham::Error::Degenerate("no normal form".into()))?;
        let pencil = Pencil::lie_pair(nf.bracket.clone(), nf.bracket1.clone())?;
        let sol = solve_lambda(pencil.omega(), pencil.omega1(), None)?;
        let lambda = sol.lambda.ok_or_else(|| biham::Error::SearchFailed("no lambda".into()))?;
        // f = lambda / omega_1 read off the first nonzero component.
        let lc = lambda.components(&RatFunc::zero(3));
        let oc = pencil.omega1().components(&Poly::zero(3));
        let k = (0..3).find(|&k| !oc[k].is_zero()).expect("omega_1 is nonzero");
        let f = &lc[k] / &RatFunc::from_poly(oc[k].clone());
        let proportional = lc.iter().zip(&oc).all(|(x, y)| *x == &f * &RatFunc::from_poly(y.clone()));
        facts.push((names[0], nf.p.to_string()));
        facts.push((names[1], nf.q.to_string()));
        facts.push((names[2], if proportional { f.to_string() } else { "not proportional".into() }));
        facts.push((names[3], r.generic_nonflat.to_string()));
    }
    Ok(facts)
}

fn secondary_truncated5() -> Result<Facts, biham::Error> {
    let l = truncated_algebra(5)?;
    let c = prop4_pencil(&l, &ints(&[0, 0, 0, 0, 1]), &ints(&[0, 0, 0, 1, 1]))?;
    Ok(vec![
        ("dim", c.algebra.dim().to_string()),
        ("jacobi", c.algebra.jacobi_check().ok.to_string()),
        ("gamma", vecs_str(&c.gamma)),
        ("rho", vec_str(&c.rho)),
        ("base_point", vec_str(&c.base_point)),
        ("rank_at_base", c.pencil.rank_at(&c.base_point, &Param::Infinity)?.to_string()),
        ("generic_at_base", c.pencil.generic_at(&c.base_point)?.generic().to_string()),
        ("lemma3_at_base", lemma3_verdict(&c.pencil, &c.base_point)?),
    ])
}

fn nijenhuis_truncated() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    for (m, names) in [
        (5usize, ["torsion_zero_m5", "center_m5", "top_power_m5", "verdict_m5"]),
        (7, ["torsion_zero_m7", "center_m7", "top_power_m7", "verdict_m7"]),
    ] {
        let n = m.div_ceil(2);
        let l = truncated_algebra(m)?;
        let phi = truncated_nijenhuis_operator(m)?;
        facts.push((names[0], nijenhuis_torsion(&l, &phi)?.is_zero().to_string()));
        let d = deformed_bracket(&l, &phi)?;
        facts.push((names[1], vecs_str(&d.center())));
        let p = Pencil::lie_pair(l, d)?;
        facts.push((names[2], p.lambda1().wedge_power(n - 1, Poly::one(m)).to_string()));
        let pt = p
            .find_generic_point_in(500, 0x5eed, |x: &[Rational]| !x[n - 1].is_zero() && !x[2 * n - 3].is_zero())?
            .ok_or_else(|| biham::Error::SearchFailed("no generic point".into()))?;
        facts.push((names[3], verdict(&p, &pt)?));
    }
    Ok(facts)
}

fn affine_killing_ranks() -> Result<Facts, biham::Error> {
    let a = prop6_rank_suite(2, &ints(&[1, -1]), &[1, 2])?;
    let b = prop6_rank_suite(3, &ints(&[1, 1, -2]), &[1, 3])?;
    let c = prop6_rank_suite(3, &ints(&[1, 1, -2]), &[1, 2])?;
    Ok(vec![
        ("n2_distinct_rank", format!("{}/{}", a.rank, a.dim)),
        ("n2_distinct_symplectic", a.symplectic.to_string()),
        ("n3_repeated_rank", format!("{}/{}", b.rank, b.dim)),
        ("n3_repeated_kernel_in_sl_v", b.kernel_in_sl_v.to_string()),
        ("n3_repeated_tau12_rank", format!("{}/{}", c.rank, c.dim)),
    ])
}

fn contact_couple_family() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    for (n, name) in [(2usize, "accepted_n2"), (3, "accepted_n3"), (4, "accepted_n4")] {
        let coeffs: Vec<Rational> = (1..n as i64).map(rat).collect();
        let (alpha, beta) = contact_family_forms(n, &coeffs)?;
        let mut accepted = Vec::new();
        for a in [rat(-1), ratio(1, 3), ratio(1, 2), rat(1), rat(2)] {
            let l = contact_family_algebra(n, &a)?;
            let r = l.generic_couple_check(&alpha, &beta)?;
            if r.generic && r.beta_contact {
                accepted.push(a);
            }
        }
        facts.push((name, vec_str(&accepted)));
    }
    let l = contact_family_algebra(3, &rat(1))?;
    let (_, beta) = contact_family_forms(3, &ints(&[1, 2]))?;
    facts.push(("contact_volume_n3_a1", format_rational(&l.contact_volume(&beta)?)));
    Ok(facts)
}

fn product_affine_truncated5() -> Result<Facts, biham::Error> {
    let l = truncated_algebra(5)?;
    let c = prop7_pencil(&l, &ints(&[0, 0, 0, 0, 1]), &ints(&[0, 0, 0, 1, 1]))?;
    Ok(vec![
        ("dim", c.pencil.dim().to_string()),
        ("deformed_jacobi", c.deformed.jacobi_check().ok.to_string()),
        ("compatible", c.pencil.compatibility_check()?.ok.to_string()),
        ("base_point", vec_str(&c.base_point)),
        ("generic_at_base", c.pencil.generic_at(&c.base_point)?.generic().to_string()),
        ("verdict_at_base", verdict(&c.pencil, &c.base_point)?),
    ])
}

fn scalar_families() -> Result<Facts, biham::Error> {
    let mut facts = Vec::new();
    for (n, names) in [(2usize, ["families_n2", "valid_n2"]), (3, ["families_n3", "valid_n3"])] {
        let f = lemma9_families(n, 0x5eed)?;
        facts.push((names[0], format!("a {} b {} c {}", vec_str(&f.a), vec_str(&f.b), vec_str(&f.c))));
        facts.push((names[1], f.verify().is_ok().to_string()));
    }
    Ok(facts)
}

pub static CASES: &[CaseRecord] = &[
    CaseRecord {
        id: "lie-pair-k5",
        provenance: "compatible Lie pair on K^5 that is generic yet flat nowhere",
        inputs: r#"{"pencil":"lie_pair","point":[1,1,1,0,0]}"#,
        expected: &[
            ("compatible", "true"),
            ("omega", "-x3*dx1^dx2^dx4 + x3*dx1^dx2^dx5 + x2*dx1^dx3^dx4 - x1*dx2^dx3^dx4 + x2*dx2^dx3^dx5"),
            ("omega1", "x2*dx1^dx3^dx4 - x1*dx1^dx3^dx5 - x1*dx2^dx3^dx4"),
            ("d_omega", "-3*dx1^dx2^dx3^dx4 + dx1^dx2^dx3^dx5"),
            ("d_omega1", "-2*dx1^dx2^dx3^dx4"),
            ("lambda_exists", "false"),
            ("verdict_at_1_1_1_0_0", "non_flat"),
        ],
        compute: lie_pair_k5,
    },
    CaseRecord {
        id: "flat-linear-pair-k5",
        provenance: "linear pair on K^5 flat at (0,0,1,0,1); shifted members Lambda_1 + a Lambda(p) are not",
        inputs: r#"{"point":[0,0,1,0,1],"shifts":[1,2]}"#,
        expected: &[
            ("generic_at_base", "true"),
            ("verdict_at_base", "flat"),
            ("lemma3_at_base", "flat"),
            ("casimir_a1", "[0, -1, 0, -1, 1]"),
            ("field_a1", "[-1, 0, -1, 0, 0]"),
            ("verdict_a1", "non_flat"),
            ("casimir_a2", "[0, -2, 0, -4, 1]"),
            ("field_a2", "[-1, 0, -2, 0, 0]"),
            ("verdict_a2", "non_flat"),
        ],
        compute: flat_linear_pair_k5,
    },
    CaseRecord {
        id: "truncated-linear-pair",
        provenance: "truncated algebra [e_i,e_j]=(j-i)e_{i+j-1} with cocycle d e_m*, non-flat at e_{m-1}*",
        inputs: r#"{"m":[5,7]}"#,
        expected: &[
            ("de5", "-4*dx1^dx5 - 2*dx2^dx4"),
            ("de4", "-3*dx1^dx4 - dx2^dx3"),
            ("generic_m5", "true"),
            ("lemma3_m5", "non_flat"),
            ("verdict_m5", "non_flat"),
            ("de7", "-6*dx1^dx7 - 4*dx2^dx6 - 2*dx3^dx5"),
            ("de6", "-5*dx1^dx6 - 3*dx2^dx5 - dx3^dx4"),
            ("generic_m7", "true"),
            ("lemma3_m7", "non_flat"),
            ("verdict_m7", "non_flat"),
        ],
        compute: truncated_linear_pair,
    },
    CaseRecord {
        id: "dim3-linear-grid",
        provenance: "three-dimensional linear pairs: flat iff the quadratic in (b2,b3) vanishes",
        inputs: r#"{"catalog":["diagonal-1-2","scalar","jordan","rotation","mixed"],"b2":[-2,2],"b3":[-2,2]}"#,
        expected: &[
            ("agreement", "125/125"),
            ("counts", "flat 36, non_flat 84, degenerate 5"),
            ("lambda_diag_1_2_b_1_1", "((3)/(x2 - 2*x3))*dx2 + ((-3)/(x2 - 2*x3))*dx3"),
            ("d_lambda_diag_1_2_b_1_1", "((-3)/(x2^2 - 4*x2*x3 + 4*x3^2))*dx2^dx3"),
        ],
        compute: dim3_linear_grid,
    },
    CaseRecord {
        id: "dim3-lie-normal-form",
        provenance: "three-dimensional Lie pairs in normal form: lambda = f omega_1 with f = -(a22+a33)/P",
        inputs: r#"{"instances":[{"a":[1,0,1,1],"b":0},{"a":[1,0,0,1],"b":2}]}"#,
        expected: &[
            ("p_jordan_b0", "-x2*x3 - x3^2"),
            ("q_jordan_b0", "-x3^2"),
            ("f_jordan_b0", "(2)/(x2*x3 + x3^2)"),
            ("nonflat_jordan_b0", "true"),
            ("p_scalar_b2", "2*x2^2 - x3^2"),
            ("q_scalar_b2", "2*x2^2 - x3^2"),
            ("f_scalar_b2", "(-1)/(x2^2 - 1/2*x3^2)"),
            ("nonflat_scalar_b2", "false"),
        ],
        compute: dim3_lie_normal_form,
    },
    CaseRecord {
        id: "secondary-truncated5",
        provenance: "linear pair on the dual of the secondary algebra of truncated(5) from alpha = e5*, beta = e5* + e4*",
        inputs: r#"{"m":5,"alpha":"e5","beta":"e5+e4"}"#,
        expected: &[
            ("dim", "11"),
            ("jacobi", "true"),
            ("gamma", "[[0, 0, 8, 0, 0], [0, 0, 16, -4, 0], [0, 0, 8, -4, 3]]"),
            ("rho", "[0, 0, 1/8, 1/2, 1/3]"),
            ("base_point", "[0, 0, 1/8, 1/2, 1/3, 0, 0, 0, 0, 1, 0]"),
            ("rank_at_base", "10"),
            ("generic_at_base", "true"),
            ("lemma3_at_base", "non_flat"),
        ],
        compute: secondary_truncated5,
    },
    CaseRecord {
        id: "nijenhuis-truncated",
        provenance: "Nijenhuis deformation of the truncated algebra: unimodular, compatible, non-flat",
        inputs: r#"{"m":[5,7]}"#,
        expected: &[
            ("torsion_zero_m5", "true"),
            ("center_m5", "[[0, 0, 1, 0, 0]]"),
            ("top_power_m5", "8*x3^2*d/dx1^d/dx2^d/dx4^d/dx5"),
            ("verdict_m5", "non_flat"),
            ("torsion_zero_m7", "true"),
            ("center_m7", "[[0, 0, 0, 1, 0, 0, 0]]"),
            ("top_power_m7", "-144*x4^3*d/dx1^d/dx2^d/dx3^d/dx5^d/dx6^d/dx7"),
            ("verdict_m7", "non_flat"),
        ],
        compute: nijenhuis_truncated,
    },
    CaseRecord {
        id: "affine-killing-ranks",
        provenance: "rank of d(alpha_g + tau) on the affine algebra with Killing-form alpha_g",
        inputs: r#"{"cases":[{"n":2,"eigenvalues":[1,-1],"tau":[1,2]},{"n":3,"eigenvalues":[1,1,-2],"tau":[1,3]},{"n":3,"eigenvalues":[1,1,-2],"tau":[1,2]}]}"#,
        expected: &[
            ("n2_distinct_rank", "6/6"),
            ("n2_distinct_symplectic", "true"),
            ("n3_repeated_rank", "10/12"),
            ("n3_repeated_kernel_in_sl_v", "false"),
            ("n3_repeated_tau12_rank", "8/12"),
        ],
        compute: affine_killing_ranks,
    },
    CaseRecord {
        id: "contact-couple-family",
        provenance: "odd-dimensional family with a generic contact couple except at finitely many a",
        inputs: r#"{"n":[2,3,4],"a":["-1","1/3","1/2","1","2"]}"#,
        expected: &[
            ("accepted_n2", "[-1, 1/3, 1/2, 2]"),
            ("accepted_n3", "[-1, 1/3, 2]"),
            ("accepted_n4", "[-1, 1, 2]"),
            ("contact_volume_n3_a1", "-4"),
        ],
        compute: contact_couple_family,
    },
    CaseRecord {
        id: "product-affine-truncated5",
        provenance: "Lie pair on truncated(5) x Aff(K) deformed by f1 (x) beta",
        inputs: r#"{"m":5,"alpha":"e5","beta":"e5+e4"}"#,
        expected: &[
            ("dim", "7"),
            ("deformed_jacobi", "true"),
            ("compatible", "true"),
            ("base_point", "[0, 0, 0, 0, 1, 1, 0]"),
            ("generic_at_base", "true"),
            ("verdict_at_base", "non_flat"),
        ],
        compute: product_affine_truncated5,
    },
    CaseRecord {
        id: "scalar-families",
        provenance: "rational scalar families with distinct entries and distinct collision parameters",
        inputs: r#"{"n":[2,3],"seed":24301}"#,
        expected: &[
            ("families_n2", "a [1, -1] b [4, -4] c [-1, -3]"),
            ("valid_n2", "true"),
            ("families_n3", "a [-4, -5, 9] b [-1, -3, 4] c [-2, -3, -5]"),
            ("valid_n3", "true"),
        ],
        compute: scalar_families,
    },
];

pub fn ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

pub fn find(id: &str) -> Option<&'static CaseRecord> {
    CASES.iter().find(|c| c.id == id)
}

pub fn run_case(case: &'static CaseRecord) -> CaseResult {
    let (actual, error) = match (case.compute)() {
        Ok(f) => (f, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let mut facts: Vec<FactResult> = case
        .expected
        .iter()
        .map(|(name, exp)| FactResult {
            name: name.to_string(),
            expected: exp.to_string(),
            actual: actual.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone()),
        })
        .collect();
    // Computed facts missing from the golden table count as failures.
    for (name, v) in &actual {
        if !case.expected.iter().any(|(n, _)| n == name) {
            facts.push(FactResult { name: name.to_string(), expected: String::new(), actual: Some(v.clone()) });
        }
    }
    CaseResult { id: case.id, provenance: case.provenance, inputs: case.inputs, facts, error }
}

/// Runs the named cases concurrently, preserving the given order.
pub fn run(ids: &[&str]) -> Vec<CaseResult> {
    ids.par_iter().filter_map(|id| find(id)).map(run_case).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_every_case_has_facts() {
        let mut ids = ids();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CASES.len());
        assert!(CASES.iter().all(|c| !c.expected.is_empty() && !c.provenance.is_empty()));
        assert!(CASES.iter().all(|c| serde_json::from_str::<Value>(c.inputs).is_ok()));
    }

    #[test]
    fn mismatch_and_missing_facts_fail() {
        let f = FactResult { name: "x".into(), expected: "1".into(), actual: Some("2".into()) };
        assert!(!f.pass());
        let g = FactResult { name: "x".into(), expected: "1".into(), actual: None };
        assert!(!g.pass());
    }

    #[test]
    fn run_preserves_order_and_skips_unknown() {
        let r = run(&["scalar-families", "nope", "affine-killing-ranks"]);
        assert_eq!(r.iter().map(|c| c.id).collect::<Vec<_>>(), vec!["scalar-families", "affine-killing-ranks"]);
        assert!(r.iter().all(CaseResult::pass));
    }
}
