//! Strategies and property checks shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use biham::constructions::{algebra_ava, contact_family_algebra, truncated_nijenhuis_operator, deformed_bracket, special_affine, special_linear, truncated_algebra, three_dim_algebra};
use biham::exterior::{bivector_from_form, form_from_bivector, Graded, Kind, VolumeForm};
use biham::flatness::curvature_from_forms;
use biham::liealg::{AAlphaOutcome, LieAlgebra};
use biham::pencil::Pencil;
use biham::ring::{rat, Poly, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const SEED: u64 = 0x5eed_2024;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), -3i64..=3), 0..=3).prop_map(move |terms| {
        Poly::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, rat(c)))).expect("valid exponents")
    })
}

pub fn graded(kind: Kind, dim: usize, degree: usize, max_terms: usize) -> impl Strategy<Value = Graded<Poly>> {
    let blades = subsets(dim, degree);
    prop::collection::vec((prop::sample::select(blades), poly(dim)), 0..=max_terms).prop_map(move |terms| {
        let mut g = Graded::zero(kind, dim, degree);
        for (b, p) in terms {
            g = g.plus(&Graded::from_terms(kind, dim, degree, vec![(b, p)]).expect("valid blade")).expect("same shape");
        }
        g
    })
}

pub fn form_any_degree(dim: usize) -> impl Strategy<Value = Graded<Poly>> {
    (0..=dim).prop_flat_map(move |k| graded(Kind::Form, dim, k, 3))
}

pub fn check_dd(f: &Graded<Poly>) -> Result<(), TestCaseError> {
    let dd = f.d().and_then(|g| g.d()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(dd.is_zero(), "d(d f) = {}", dd);
    Ok(())
}

pub fn check_wedge(a: &Graded<Poly>, b: &Graded<Poly>, c: &Graded<Poly>) -> Result<(), TestCaseError> {
    let ab = a.wedge(b).unwrap();
    let ba = b.wedge(a).unwrap();
    let sign_flip = (a.degree() * b.degree()) % 2 == 1;
    prop_assert_eq!(&ab, &if sign_flip { ba.negated() } else { ba });
    prop_assert_eq!(ab.wedge(c).unwrap(), a.wedge(&b.wedge(c).unwrap()).unwrap());
    Ok(())
}

pub fn check_round_trip(lambda: &Graded<Poly>, form: &Graded<Poly>) -> Result<(), TestCaseError> {
    let vol = VolumeForm::standard(lambda.dim());
    let w = form_from_bivector(lambda, &vol).unwrap();
    prop_assert_eq!(&bivector_from_form(&w, &vol).unwrap(), lambda);
    let l = bivector_from_form(form, &vol).unwrap();
    prop_assert_eq!(&form_from_bivector(&l, &vol).unwrap(), form);
    Ok(())
}

/// Linear pair `(Lambda, d/dx1 ^ (b2 d/dx2 + b3 d/dx3))` on a 3-dimensional
/// algebra with `[e1, .]` acting on `span{e2, e3}`.
pub fn dim3_pair(a: [i64; 4], b2: i64, b3: i64) -> Pencil {
    let l = three_dim_algebra(&rat(a[0]), &rat(a[1]), &rat(a[2]), &rat(a[3]));
    let beta = Graded::from_terms(Kind::Form, 3, 2, vec![(vec![0, 1], rat(b2)), (vec![0, 2], rat(b3))]).unwrap();
    Pencil::linear_pair(l, beta).unwrap()
}

/// `d lambda` is unchanged when both representatives are multiplied by
/// `1 + x1^2`.
pub fn check_rescaling(a: [i64; 4], b2: i64, b3: i64) -> Result<(), TestCaseError> {
    prop_assume!(a[0] + a[3] != 0);
    let p = dim3_pair(a, b2, b3);
    let Ok(curv) = curvature_from_forms(p.omega(), p.omega1()) else {
        return Err(TestCaseError::reject("not generic anywhere"));
    };
    let x1 = Poly::var(3, 0);
    let h = &Poly::one(3) + &(&x1 * &x1);
    let scaled = curvature_from_forms(&p.omega().times(&h), &p.omega1().times(&h)).unwrap();
    prop_assert_eq!(curv, scaled);
    Ok(())
}

pub fn unimodular_catalog() -> Vec<(&'static str, LieAlgebra)> {
    let heis = LieAlgebra::from_brackets(3, None, vec![(0, 1, vec![rat(0), rat(0), rat(1)])]).unwrap();
    let deformed5 = deformed_bracket(&truncated_algebra(5).unwrap(), &truncated_nijenhuis_operator(5).unwrap()).unwrap();
    vec![
        ("sl2", special_linear(2).unwrap()),
        ("heisenberg", heis),
        ("contact-family-n3-a-1", contact_family_algebra(3, &rat(-1)).unwrap()),
        ("special-affine-2", special_affine(2).unwrap()),
        ("ava-2-2", algebra_ava(2, &rat(2)).unwrap()),
        ("nijenhuis-deformed-5", deformed5),
    ]
}

/// `Some(true)` when `A_alpha` is two-dimensional and non-abelian,
/// `Some(false)` when it is abelian, `None` otherwise.
pub fn a_alpha_nonabelian(l: &LieAlgebra, alpha: &[Rational]) -> Option<bool> {
    match l.subalgebra_a_alpha(alpha) {
        Ok(AAlphaOutcome::TwoDimensional { abelian, .. }) => Some(!abelian),
        _ => None,
    }
}
