//! Flatness of generic odd-dimensional pencils.
//!
//! A generic pair represented by `(omega, omega_1, Omega)` is flat exactly
//! when some 1-form `lambda` satisfies `d omega = lambda ^ omega` and
//! `d omega_1 = lambda ^ omega_1`. In dimension 3 such a `lambda` always
//! exists and `d lambda` is the obstruction.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{DiffForm, Graded, Kind};
use crate::liealg::LieAlgebra;
use crate::pencil::{combine_algebras, Pencil};
use crate::ring::{self, fraction_free_kernel, fraction_free_solve, Matrix, Poly, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Flat,
    NonFlat,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Flat => "flat",
            Verdict::NonFlat => "non_flat",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    NoLambdaSolution,
    DLambdaNonzero,
    LambdaFoundDimGe5,
    DLambdaZero,
    CriterionPreconditionsFailed,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::NoLambdaSolution => "no-lambda-solution",
            Reason::DLambdaNonzero => "dlambda-nonzero",
            Reason::LambdaFoundDimGe5 => "lambda-found-dim-ge-5",
            Reason::DLambdaZero => "dlambda-zero",
            Reason::CriterionPreconditionsFailed => "criterion-preconditions-failed",
        }
    }
}

/// Linear system `lambda ^ omega = d omega`, `lambda ^ omega_1 = d omega_1`
/// in the unknown components of `lambda`.
///
/// Row `K` (an (m-1)-subset) of the `omega` block has the coefficient
/// `(-1)^pos_K(i) omega_{K - i}` on `lambda_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSystem {
    pub matrix: Vec<Vec<Poly>>,
    pub rhs: Vec<Poly>,
    /// The (m-1)-subset of each row, 0-based; `omega` rows come first.
    pub rows: Vec<Vec<usize>>,
}

impl LambdaSystem {
    pub fn build(omega: &DiffForm, omega1: &DiffForm) -> Result<Self> {
        let m = omega.dim();
        if m < 3 || omega1.dim() != m {
            return Err(Error::Dimension("representatives need a common dimension m >= 3".into()));
        }
        for w in [omega, omega1] {
            if w.kind() != Kind::Form || w.degree() != m - 2 {
                return Err(Error::Kind("representatives must be (m-2)-forms".into()));
            }
        }
        let nvars = form_vars(omega).or_else(|| form_vars(omega1)).unwrap_or(m);
        let zero = Poly::zero(nvars);
        let mut matrix = Vec::with_capacity(2 * m);
        let mut rhs = Vec::with_capacity(2 * m);
        let mut rows = Vec::with_capacity(2 * m);
        for w in [omega, omega1] {
            let dw = w.d()?;
            for s in 0..m {
                let k: Vec<usize> = (0..m).filter(|&i| i != s).collect();
                let mut row = vec![zero.clone(); m];
                for (pos, &i) in k.iter().enumerate() {
                    let rest: Vec<usize> = k.iter().copied().filter(|&j| j != i).collect();
                    if let Some(c) = w.get(&rest) {
                        row[i] = if pos % 2 == 1 { -c } else { c.clone() };
                    }
                }
                matrix.push(row);
                rhs.push(dw.get(&k).cloned().unwrap_or_else(|| zero.clone()));
                rows.push(k);
            }
        }
        Ok(LambdaSystem { matrix, rhs, rows })
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }
}

fn form_vars(w: &DiffForm) -> Option<usize> {
    w.terms().next().map(|(_, c)| c.num_vars())
}

/// Why no `lambda` exists.
#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    /// Equation reduced to `0 = nonzero` by elimination over `Q(x)`.
    Row(usize),
    /// Point at which the matrix has full column rank while the augmented
    /// matrix has larger rank, which forces the same over `Q(x)`.
    Point(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSolution {
    pub found: bool,
    pub lambda: Option<Graded<RatFunc>>,
    /// Full column rank over the fraction field.
    pub unique: bool,
    pub rank: usize,
    pub obstruction: Option<Obstruction>,
}

/// Solves the lambda system over `Q(x)`. A `point` steers pivot choice so
/// the solution is defined there when possible, and enables an exact rank
/// shortcut for inconsistent systems.
pub fn solve_lambda(omega: &DiffForm, omega1: &DiffForm, point: Option<&[Rational]>) -> Result<LambdaSolution> {
    let sys = LambdaSystem::build(omega, omega1)?;
    let m = sys.unknowns();
    if let Some(p) = point {
        let a: Matrix<Rational> = sys.matrix.iter().map(|r| r.iter().map(|c| c.eval(p)).collect()).collect();
        if ring::rank(&a).expect("rational field") == m {
            let aug: Matrix<Rational> =
                a.iter().zip(&sys.rhs).map(|(r, b)| r.iter().cloned().chain([b.eval(p)]).collect()).collect();
            if ring::rank(&aug).expect("rational field") == m + 1 {
                return Ok(LambdaSolution {
                    found: false,
                    lambda: None,
                    unique: true,
                    rank: m,
                    obstruction: Some(Obstruction::Point(p.to_vec())),
                });
            }
        }
    }
    let out = fraction_free_solve(&sys.matrix, &sys.rhs, point);
    let lambda = out.solution.map(|v| Graded::degree_one(Kind::Form, v));
    Ok(LambdaSolution {
        found: lambda.is_some(),
        lambda,
        unique: out.rank == m,
        rank: out.rank,
        obstruction: out.certificate_row.map(Obstruction::Row),
    })
}

/// Checks `d omega = lambda ^ omega` and `d omega_1 = lambda ^ omega_1`.
pub fn lambda_satisfies(omega: &DiffForm, omega1: &DiffForm, lambda: &Graded<RatFunc>) -> Result<bool> {
    for w in [omega, omega1] {
        let lhs = w.d()?.to_ratfunc();
        let rhs = lambda.wedge(&w.to_ratfunc())?;
        if !lhs.minus(&rhs)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of the distinct denominators of `lambda`.
pub fn denominator_locus(lambda: &Graded<RatFunc>, nvars: usize) -> Poly {
    let mut dens: Vec<Poly> = Vec::new();
    for (_, c) in lambda.terms() {
        if !c.den().is_constant() && !dens.contains(c.den()) {
            dens.push(c.den().clone());
        }
    }
    dens.iter().fold(Poly::one(nvars), |acc, d| &acc * d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatnessReport {
    pub verdict: Verdict,
    pub reason: Reason,
    pub lambda: Option<Graded<RatFunc>>,
    pub denominator_locus: Option<Poly>,
    /// `d lambda`, dimension 3 only.
    pub curvature: Option<Graded<RatFunc>>,
    pub detail: String,
}

impl FlatnessReport {
    fn inapplicable(detail: impl Into<String>) -> Self {
        FlatnessReport {
            verdict: Verdict::Inapplicable,
            reason: Reason::CriterionPreconditionsFailed,
            lambda: None,
            denominator_locus: None,
            curvature: None,
            detail: detail.into(),
        }
    }
}

/// Checks the preconditions of the criterion at `point`; `Some` carries the
/// reason they fail.
fn criterion_preconditions(p: &Pencil, point: &[Rational]) -> Result<Option<String>> {
    let m = p.dim();
    if m.is_multiple_of(2) || m < 3 {
        return Ok(Some(format!("the criterion needs odd dimension >= 3, got {m}")));
    }
    match p.compatibility_check() {
        Err(Error::Unsupported(s)) => return Ok(Some(s)),
        Err(e) => return Err(e),
        Ok(c) if !c.ok => return Ok(Some("the pencil is not compatible".into())),
        Ok(_) => {}
    }
    if !p.generic_at(point)?.generic() {
        return Ok(Some("the pencil is not generic at the point".into()));
    }
    Ok(None)
}

pub fn flatness_test(p: &Pencil, point: &[Rational]) -> Result<FlatnessReport> {
    if let Some(why) = criterion_preconditions(p, point)? {
        return Ok(FlatnessReport::inapplicable(why));
    }
    let sol = solve_lambda(p.omega(), p.omega1(), Some(point))?;
    let Some(lambda) = sol.lambda else {
        if p.dim() == 3 {
            return Ok(FlatnessReport::inapplicable("no lambda in dimension 3: not a Poisson pair"));
        }
        return Ok(FlatnessReport {
            verdict: Verdict::NonFlat,
            reason: Reason::NoLambdaSolution,
            lambda: None,
            denominator_locus: None,
            curvature: None,
            detail: match sol.obstruction {
                Some(Obstruction::Row(r)) => format!("equation {} is inconsistent over Q(x)", r + 1),
                _ => "augmented rank exceeds full column rank at the point".into(),
            },
        });
    };
    let locus = denominator_locus(&lambda, point.len());
    if locus.eval(point).is_zero() {
        return Ok(FlatnessReport {
            detail: "the point lies on the denominator locus of lambda".into(),
            lambda: Some(lambda),
            denominator_locus: Some(locus),
            ..FlatnessReport::inapplicable("")
        });
    }
    if p.dim() >= 5 {
        return Ok(FlatnessReport {
            verdict: Verdict::Flat,
            reason: Reason::LambdaFoundDimGe5,
            lambda: Some(lambda),
            denominator_locus: Some(locus),
            curvature: None,
            detail: "lambda exists and is defined at the point".into(),
        });
    }
    let curv = lambda.d()?;
    let flat = curv.is_zero();
    Ok(FlatnessReport {
        verdict: if flat { Verdict::Flat } else { Verdict::NonFlat },
        reason: if flat { Reason::DLambdaZero } else { Reason::DLambdaNonzero },
        lambda: Some(lambda),
        denominator_locus: Some(locus),
        curvature: Some(curv),
        detail: String::new(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma3Report {
    pub applicable: bool,
    pub flat: bool,
    /// Polynomial Casimir of `Lambda_1` nonvanishing at the point.
    pub casimir: Option<Vec<Poly>>,
    /// Field with `i_X Omega = d omega`.
    pub x: Option<Vec<Poly>>,
    /// `Lambda(casimir, .)`.
    pub y: Option<Vec<Poly>>,
    /// First nonzero minor `X_i Y_j - X_j Y_i` as `(i, j, minor)`.
    pub witness: Option<(usize, usize, Poly)>,
    pub detail: String,
}

impl Lemma3Report {
    fn not_applicable(detail: impl Into<String>) -> Self {
        Lemma3Report { applicable: false, flat: false, casimir: None, x: None, y: None, witness: None, detail: detail.into() }
    }
}

/// Flatness through proportionality of `X` and `Lambda(alpha, .)`, for
/// pencils with `d omega_1 = 0` and `d omega(point) != 0`.
pub fn lemma3_test(p: &Pencil, point: &[Rational]) -> Result<Lemma3Report> {
    let m = p.dim();
    if m < 5 {
        return Ok(Lemma3Report::not_applicable(format!("needs odd dimension >= 5, got {m}")));
    }
    if let Some(why) = criterion_preconditions(p, point)? {
        return Ok(Lemma3Report::not_applicable(why));
    }
    if !p.omega1().d()?.is_zero() {
        return Ok(Lemma3Report::not_applicable("d omega_1 is not identically zero"));
    }
    let dw = p.omega().d()?;
    let nvars = point.len();
    let zero = Poly::zero(nvars);
    let x: Vec<Poly> = (0..m)
        .map(|s| {
            let rest: Vec<usize> = (0..m).filter(|&k| k != s).collect();
            let c = dw.get(&rest).cloned().unwrap_or_else(|| zero.clone());
            if s % 2 == 1 { -&c } else { c }
        })
        .collect();
    if x.iter().all(|c| c.eval(point).is_zero()) {
        return Ok(Lemma3Report::not_applicable("d omega vanishes at the point"));
    }
    let l1 = p.lambda1().skew_matrix(&zero);
    let kernel = fraction_free_kernel(&l1, m, nvars, Some(point));
    let Some(alpha) = kernel.into_iter().find(|v| v.iter().any(|c| !c.eval(point).is_zero())) else {
        return Ok(Lemma3Report::not_applicable("no Casimir of Lambda_1 is nonzero at the point"));
    };
    let y = p.lambda().contract_bivector(&alpha, &zero).components(&zero);
    let mut witness = None;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let minor = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if !minor.is_zero() {
                witness = Some((i, j, minor));
                break 'outer;
            }
        }
    }
    Ok(Lemma3Report {
        applicable: true,
        flat: witness.is_none(),
        casimir: Some(alpha),
        x: Some(x),
        y: Some(y),
        witness,
        detail: String::new(),
    })
}

/// `d lambda` from explicit 1-form representatives in dimension 3.
pub fn curvature_from_forms(omega: &DiffForm, omega1: &DiffForm) -> Result<Graded<RatFunc>> {
    if omega.dim() != 3 {
        return Err(Error::Dimension(format!("curvature is defined in dimension 3, got {}", omega.dim())));
    }
    if omega.wedge(omega1)?.is_zero() {
        return Err(Error::Precondition("the pencil is generic nowhere".into()));
    }
    let sol = solve_lambda(omega, omega1, None)?;
    let lambda = sol
        .lambda
        .ok_or_else(|| Error::Precondition("no lambda exists: the pair is not a Poisson pair".into()))?;
    lambda.d()
}

/// Curvature 2-form `d lambda` of a compatible pencil in dimension 3.
pub fn curvature_dim3(p: &Pencil) -> Result<Graded<RatFunc>> {
    if p.dim() != 3 {
        return Err(Error::Dimension(format!("curvature is defined in dimension 3, got {}", p.dim())));
    }
    if !p.compatibility_check()?.ok {
        return Err(Error::Precondition("the pencil is not compatible".into()));
    }
    curvature_from_forms(p.omega(), p.omega1())
}

/// Rank of `[b, .]` for the element `b`; a linear field `Lambda(alpha, .)`
/// is proportional to a constant field near some point iff this is <= 1.
pub fn linear_field_rank(algebra: &LieAlgebra, b: &[Rational]) -> usize {
    ring::rank(&algebra.ad_matrix(b)).expect("rational field")
}

/// Basis `(e_1, w_2, w_3)` with `w_2, w_3` spanning the unimodular ideal,
/// as matrix columns. `None` for unimodular algebras.
fn ideal_adapted_basis(l: &LieAlgebra) -> Option<(Matrix<Rational>, Vec<Vec<Rational>>)> {
    let tau = l.trace_form();
    let e1 = (0..3).find(|&k| !tau[k].is_zero())?;
    let ideal = l.unimodular_ideal();
    let cols = [l.basis_vector(e1), ideal[0].clone(), ideal[1].clone()];
    Some((columns(&cols), ideal))
}

fn columns(cols: &[Vec<Rational>]) -> Matrix<Rational> {
    let n = cols[0].len();
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dim3LinearReport {
    /// Columns are the normalized basis in the input coordinates.
    pub basis: Matrix<Rational>,
    pub normalized: LieAlgebra,
    /// `(a22, a23, a32, a33)`.
    pub a: [Rational; 4],
    /// `a32 b2^2 + (a33 - a22) b2 b3 - a23 b3^2`.
    pub quadratic: Rational,
    pub generic_somewhere: bool,
    pub flat: bool,
    /// Whether `[u, .]` on the unimodular ideal is a multiple of the
    /// identity; otherwise some `(b2, b3)` gives a non-flat generic pair.
    pub identity_multiple: bool,
    /// The pencil `(Lambda, d/dx1 ^ (b2 d/dx2 + b3 d/dx3))` in the
    /// normalized coordinates.
    pub pencil: Pencil,
}

/// Linear pairs on a 3-dimensional non-unimodular algebra with constant
/// member `d/dx1 ^ (b2 d/dx2 + b3 d/dx3)` in an ideal-adapted basis.
pub fn dim3_linear_classify(l: &LieAlgebra, b2: &Rational, b3: &Rational) -> Result<Dim3LinearReport> {
    if l.dim() != 3 {
        return Err(Error::Dimension(format!("expected a 3-dimensional algebra, got {}", l.dim())));
    }
    let tau = l.trace_form();
    if tau.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("unimodular algebra: every linear pair is flat".into()));
    }
    let basis = if tau[1].is_zero() && tau[2].is_zero() {
        (0..3).map(|i| l.basis_vector(i)).collect()
    } else {
        ideal_adapted_basis(l).expect("non-unimodular").0
    };
    let normalized = l.change_of_basis(&basis)?;
    let c = |j, k| normalized.c(0, j, k);
    let [a22, a23, a32, a33] = [c(1, 1), c(1, 2), c(2, 1), c(2, 2)];
    let quadratic = &a32 * b2 * b2 + (&a33 - &a22) * b2 * b3 - &a23 * b3 * b3;
    let g2 = &a22 * b3 - &a32 * b2;
    let g3 = &a23 * b3 - &a33 * b2;
    let generic_somewhere = !(g2.is_zero() && g3.is_zero());
    let identity_multiple = a23.is_zero() && a32.is_zero() && a22 == a33;
    let beta = Graded::from_terms(Kind::Form, 3, 2, vec![(vec![0, 1], b2.clone()), (vec![0, 2], b3.clone())])?;
    let pencil = Pencil::linear_pair(normalized.clone(), beta)?;
    Ok(Dim3LinearReport {
        basis,
        normalized,
        flat: quadratic.is_zero(),
        a: [a22, a23, a32, a33],
        quadratic,
        generic_somewhere,
        identity_multiple,
        pencil,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim3LieCase {
    /// Brought to the normal form with a shared ideal.
    Reduced,
    /// The trace forms are independent: the unimodular ideals differ and
    /// the pair is flat.
    DistinctIdeals,
    /// One bracket is a multiple of the other: never generic.
    Proportional,
}

impl Dim3LieCase {
    pub fn as_str(self) -> &'static str {
        match self {
            Dim3LieCase::Reduced => "reduced",
            Dim3LieCase::DistinctIdeals => "distinct-ideals",
            Dim3LieCase::Proportional => "proportional",
        }
    }
}

/// Normal form `[e1,e2] = a22 e2 + a23 e3`, `[e1,e3] = a32 e2 + a33 e3`,
/// `[e1,e2]_1 = e3`, `[e1,e3]_1 = b e2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dim3LieNormalForm {
    /// Columns are the normalized basis in the input coordinates.
    pub basis: Matrix<Rational>,
    pub bracket: LieAlgebra,
    pub bracket1: LieAlgebra,
    pub a: [Rational; 4],
    pub b: Rational,
    /// `a22 b x2^2 + (a23 b - a32) x2 x3 - a33 x3^2`.
    pub p: Poly,
    /// `b x2^2 - x3^2`.
    pub q: Poly,
    /// `omega_1 = -(1/2) dQ` in the normalized coordinates.
    pub omega1_is_half_dq: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dim3LieReport {
    pub case: Dim3LieCase,
    /// Whether the inputs were exchanged to make the first non-unimodular.
    pub swapped: bool,
    /// Second bracket replaced by `s [,] + s1 [,]_1`.
    pub combination: (Rational, Rational),
    pub normal_form: Option<Dim3LieNormalForm>,
    pub generic_nonflat: bool,
    /// Some eigenvector of `[u, .]_1` on the ideal is not an eigenvector of
    /// `[u, .]` there. Computed independently of `P` and `Q`.
    pub eigenvector_criterion: Option<bool>,
}

fn restrict_to_ideal(l: &LieAlgebra, u: &[Rational], ideal: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    // ideal: 3x2 matrix whose columns span the ideal.
    let zero = Rational::zero();
    let mut out = vec![vec![zero.clone(); 2]; 2];
    for j in 0..2 {
        let w: Vec<Rational> = ideal.iter().map(|r| r[j].clone()).collect();
        let img = l.bracket(u, &w);
        let c = ring::solve(ideal, &img, 2, &zero)
            .expect("rational field")
            .ok_or_else(|| Error::Precondition("the unimodular ideal is not preserved by both brackets".into()))?;
        for i in 0..2 {
            out[i][j] = c[i].clone();
        }
    }
    Ok(out)
}

fn is_eigenvector(m: &Matrix<Rational>, v: &[Rational]) -> bool {
    let mv = ring::mat_vec(m, v, &Rational::zero());
    (&mv[0] * &v[1] - &mv[1] * &v[0]).is_zero()
}

fn nonflat_by_eigenvectors(m: &Matrix<Rational>, m1: &Matrix<Rational>) -> bool {
    let zero = Rational::zero();
    if !ring::det(m1).is_zero() {
        // Distinct eigenvalues: every eigenvector of m1 is one of m iff they commute.
        ring::mat_mul(m, m1, &zero) != ring::mat_mul(m1, m, &zero)
    } else {
        let k = ring::kernel_basis(m1, 2, &zero).expect("rational field");
        !is_eigenvector(m, &k[0])
    }
}

/// Lie pairs in dimension 3 not both unimodular.
pub fn dim3_lie_classify(l: &LieAlgebra, l1: &LieAlgebra) -> Result<Dim3LieReport> {
    if l.dim() != 3 || l1.dim() != 3 {
        return Err(Error::Dimension("expected two 3-dimensional brackets".into()));
    }
    let p = Pencil::lie_pair(l.clone(), l1.clone())?;
    if !p.compatibility_check()?.ok {
        return Err(Error::Precondition("the brackets are not compatible".into()));
    }
    let (mut a, mut a1) = (l.clone(), l1.clone());
    let swapped = a.is_unimodular();
    if swapped {
        if a1.is_unimodular() {
            return Err(Error::Precondition("both brackets are unimodular: the pair is flat".into()));
        }
        std::mem::swap(&mut a, &mut a1);
    }
    let tau = a.trace_form();
    let tau1 = a1.trace_form();
    let piv = (0..3).find(|&k| !tau[k].is_zero()).expect("non-unimodular");
    let c = &tau1[piv] / &tau[piv];
    let dependent = (0..3).all(|k| tau1[k] == &c * &tau[k]);
    let mut report = Dim3LieReport {
        case: Dim3LieCase::DistinctIdeals,
        swapped,
        combination: (Rational::zero(), Rational::one()),
        normal_form: None,
        generic_nonflat: false,
        eigenvector_criterion: None,
    };
    if !dependent {
        return Ok(report);
    }
    let s = -c;
    let u1 = combine_algebras(&a, &s, &a1, &Rational::one())?;
    report.combination = (s, Rational::one());
    if u1.brackets().all(|(_, _, v)| v.iter().all(Zero::is_zero)) {
        report.case = Dim3LieCase::Proportional;
        return Ok(report);
    }
    let ideal = a.unimodular_ideal();
    let ideal_cols = columns(&ideal);
    if !u1.bracket(&ideal[0], &ideal[1]).iter().all(Zero::is_zero) {
        return Err(Error::Precondition("the shared ideal is not abelian for the second bracket".into()));
    }
    let u = a.basis_vector(piv);
    let m = restrict_to_ideal(&a, &u, &ideal_cols)?;
    let m1 = restrict_to_ideal(&u1, &u, &ideal_cols)?;
    let one = Rational::one;
    let zero = Rational::zero;
    let e2c = [vec![one(), zero()], vec![zero(), one()], vec![one(), one()]]
        .into_iter()
        .find(|v| !is_eigenvector(&m1, v))
        .expect("a nonzero traceless map has a non-eigenvector among three pairwise independent vectors");
    let e3c = ring::mat_vec(&m1, &e2c, &zero());
    let amb = |v: &[Rational]| ring::mat_vec(&ideal_cols, v, &zero());
    let basis = columns(&[u, amb(&e2c), amb(&e3c)]);
    let bracket = a.change_of_basis(&basis)?;
    let bracket1 = u1.change_of_basis(&basis)?;
    let b = bracket1.c(0, 2, 1);
    let [a22, a23, a32, a33] = [bracket.c(0, 1, 1), bracket.c(0, 1, 2), bracket.c(0, 2, 1), bracket.c(0, 2, 2)];
    let x2x2 = |k: Rational| (vec![0, 2, 0], k);
    let x2x3 = |k: Rational| (vec![0, 1, 1], k);
    let x3x3 = |k: Rational| (vec![0, 0, 2], k);
    let pp = Poly::from_terms(
        3,
        [x2x2(&a22 * &b), x2x3(&a23 * &b - &a32), x3x3(-a33.clone())],
    )?;
    let q = Poly::from_terms(3, [x2x2(b.clone()), x3x3(-one())])?;
    let pencil_n = Pencil::lie_pair(bracket.clone(), bracket1.clone())?;
    let half_dq = Graded::degree_one(Kind::Form, (0..3).map(|k| q.partial(k).scale(&ring::ratio(-1, 2))).collect());
    let omega1_is_half_dq = pencil_n.omega1() == &half_dq;
    let proportional = {
        let v = [pp.coeff(&[0, 2, 0]), pp.coeff(&[0, 1, 1]), pp.coeff(&[0, 0, 2])];
        let w = [b.clone(), zero(), -one()];
        (0..3).all(|i| (i + 1..3).all(|j| (&v[i] * &w[j] - &v[j] * &w[i]).is_zero()))
    };
    report.case = Dim3LieCase::Reduced;
    report.generic_nonflat = !pp.is_zero() && !proportional;
    report.eigenvector_criterion = Some(nonflat_by_eigenvectors(&m, &m1));
    report.normal_form = Some(Dim3LieNormalForm {
        basis,
        bracket,
        bracket1,
        a: [a22, a23, a32, a33],
        b,
        p: pp,
        q,
        omega1_is_half_dq,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::dx;
    use crate::ring::rat;

    fn alg3(a22: i64, a23: i64, a32: i64, a33: i64) -> LieAlgebra {
        LieAlgebra::from_brackets(
            3,
            None,
            vec![(0, 1, vec![rat(0), rat(a22), rat(a23)]), (0, 2, vec![rat(0), rat(a32), rat(a33)])],
        )
        .unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn constant_forms_give_zero_lambda() {
        let w = dx(3, 3, 0);
        let w1 = dx(3, 3, 1);
        let s = solve_lambda(&w, &w1, None).unwrap();
        assert!(s.found && s.unique);
        assert!(s.lambda.unwrap().is_zero());
        assert!(curvature_from_forms(&w, &w1).unwrap().is_zero());
    }

    #[test]
    fn linear_dim3_solution_satisfies_system() {
        let l = alg3(1, 0, 0, 2);
        let r = dim3_linear_classify(&l, &rat(1), &rat(1)).unwrap();
        assert_eq!(r.quadratic, rat(1));
        assert!(!r.flat && r.generic_somewhere && !r.identity_multiple);
        let p = &r.pencil;
        let s = solve_lambda(p.omega(), p.omega1(), None).unwrap();
        assert!(lambda_satisfies(p.omega(), p.omega1(), s.lambda.as_ref().unwrap()).unwrap());
        assert!(!curvature_dim3(p).unwrap().is_zero());
        let f = flatness_test(p, &pt(&[1, 1, 2])).unwrap();
        assert_eq!(f.verdict, Verdict::NonFlat);
        assert_eq!(f.reason, Reason::DLambdaNonzero);
    }

    #[test]
    fn identity_multiple_is_flat() {
        let l = alg3(1, 0, 0, 1);
        for (b2, b3) in [(1, 0), (1, 2), (-2, 1)] {
            let r = dim3_linear_classify(&l, &rat(b2), &rat(b3)).unwrap();
            assert!(r.flat && r.identity_multiple);
            assert!(curvature_dim3(&r.pencil).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_cocycle_is_generic_nowhere() {
        let r = dim3_linear_classify(&alg3(1, 0, 0, 2), &rat(0), &rat(0)).unwrap();
        assert!(!r.generic_somewhere);
        assert!(matches!(curvature_dim3(&r.pencil), Err(Error::Precondition(_))));
    }

    #[test]
    fn unimodular_linear_input_rejected() {
        assert!(matches!(dim3_linear_classify(&alg3(1, 0, 0, -1), &rat(1), &rat(0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn ideal_is_renormalized() {
        // [e2,e1] = e1 + e3 style algebra with the ideal not on e2, e3.
        let l = alg3(1, 0, 0, 2).change_of_basis(&vec![
            vec![rat(1), rat(0), rat(1)],
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ]);
        let l = l.unwrap();
        let r = dim3_linear_classify(&l, &rat(1), &rat(0)).unwrap();
        let n = &r.normalized;
        assert!(n.trace_form()[1].is_zero() && n.trace_form()[2].is_zero());
        assert!(n.basis_bracket(1, 2).iter().all(Zero::is_zero));
    }

    fn lie_pair(a: [i64; 4], b: i64) -> (LieAlgebra, LieAlgebra) {
        let l1 = LieAlgebra::from_brackets(
            3,
            None,
            vec![(0, 1, vec![rat(0), rat(0), rat(1)]), (0, 2, vec![rat(0), rat(b), rat(0)])],
        )
        .unwrap();
        (alg3(a[0], a[1], a[2], a[3]), l1)
    }

    #[test]
    fn lie_classifier_b_zero_nonflat() {
        let (l, l1) = lie_pair([1, 0, 1, 1], 0);
        let r = dim3_lie_classify(&l, &l1).unwrap();
        assert_eq!(r.case, Dim3LieCase::Reduced);
        assert!(r.generic_nonflat);
        assert_eq!(r.eigenvector_criterion, Some(true));
        assert!(r.normal_form.unwrap().omega1_is_half_dq);
    }

    #[test]
    fn lie_classifier_identity_flat() {
        let (l, l1) = lie_pair([2, 0, 0, 2], 3);
        let r = dim3_lie_classify(&l, &l1).unwrap();
        assert!(!r.generic_nonflat);
        assert_eq!(r.eigenvector_criterion, Some(false));
        let p = Pencil::lie_pair(l, l1).unwrap();
        assert!(curvature_dim3(&p).unwrap().is_zero());
    }

    #[test]
    fn lie_classifier_distinct_ideals() {
        let l = alg3(1, 0, 0, 1);
        // Same shape with the roles of e1 and e2 exchanged.
        let l1 = LieAlgebra::from_brackets(
            3,
            None,
            vec![(0, 1, vec![rat(-1), rat(0), rat(0)]), (1, 2, vec![rat(0), rat(0), rat(1)])],
        )
        .unwrap();
        let p = Pencil::lie_pair(l.clone(), l1.clone()).unwrap();
        assert!(p.compatibility_check().unwrap().ok);
        let r = dim3_lie_classify(&l, &l1).unwrap();
        assert_eq!(r.case, Dim3LieCase::DistinctIdeals);
        assert!(!r.generic_nonflat);
    }

    #[test]
    fn both_unimodular_rejected() {
        let (_, l1) = lie_pair([0; 4], 1);
        assert!(matches!(dim3_lie_classify(&l1, &l1), Err(Error::Precondition(_))));
    }

    #[test]
    fn rank_shortcut_agrees_with_elimination() {
        // An inconsistent system detected both ways.
        let x = |i| Poly::var(3, i);
        let w = Graded::degree_one(Kind::Form, vec![Poly::zero(3), x(0), Poly::zero(3)]);
        let w1 = dx(3, 3, 2);
        let a = solve_lambda(&w, &w1, Some(&pt(&[1, 2, 3]))).unwrap();
        let b = solve_lambda(&w, &w1, None).unwrap();
        assert!(!a.found && !b.found);
        assert!(matches!(a.obstruction, Some(Obstruction::Point(_))));
        assert!(matches!(b.obstruction, Some(Obstruction::Row(_))));
    }
}
