//! Lie algebras given by structure constants.
//!
//! Basis vectors are `e_1..e_m` (0-based internally). Dual coordinates on
//! `A*` are the polynomial variables `x_1..x_m`, so a constant form on `A*`
//! is the same object as a left-invariant form on the group.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{Graded, Kind, MultiVector};
use crate::pencil::pair_genericity;
use crate::ring::{
    self, split_evaluate, Coeff, ExactField, Matrix, Poly, Rational, Residue, UniPoly, UniRatFunc, ZeroDivisor,
};

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `[e_i, e_j]` for `i < j`; only nonzero brackets are stored.
    brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// Failure of the Jacobi identity on `(e_i, e_j, e_k)`, 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}


impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, labels: default_labels(dim), brackets: BTreeMap::new() }
    }

    /// Builds from `(i, j, [e_i, e_j])` triples with 0-based indices; pairs
    /// with `i > j` are stored negated.
    pub fn from_brackets(
        dim: usize,
        labels: Option<Vec<String>>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    ) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels(dim));
        if labels.len() != dim {
            return Err(Error::Dimension(format!("{} labels for dimension {dim}", labels.len())));
        }
        let mut alg = LieAlgebra { dim, labels, brackets: BTreeMap::new() };
        for (i, j, v) in brackets {
            alg.set_bracket(i, j, v)?;
        }
        Ok(alg)
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Rational>) -> Result<()> {
        if i >= self.dim || j >= self.dim || v.len() != self.dim {
            return Err(Error::Dimension(format!("bracket ({}, {}) out of range", i + 1, j + 1)));
        }
        let nonzero = v.iter().any(|c| !c.is_zero());
        if i == j {
            return if nonzero {
                Err(Error::Domain(format!("[e{0}, e{0}] must vanish", i + 1)))
            } else {
                Ok(())
            };
        }
        let (a, b, v) = if i < j { (i, j, v) } else { (j, i, v.into_iter().map(|c| -c).collect()) };
        if nonzero {
            self.brackets.insert((a, b), v);
        } else {
            self.brackets.remove(&(a, b));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::Dimension("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Nonzero brackets `[e_i, e_j]`, `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &Vec<Rational>)> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| vec![Rational::zero(); self.dim])
        } else if i > j {
            self.basis_bracket(j, i).into_iter().map(|c| -c).collect()
        } else {
            vec![Rational::zero(); self.dim]
        }
    }

    /// Structure constant `c_{ij}^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).map_or_else(Rational::zero, |v| v[k].clone()),
            std::cmp::Ordering::Greater => -self.c(j, i, k),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    pub fn bracket_in<F: ExactField>(&self, u: &[F], v: &[F], proto: &F) -> Vec<F> {
        let mut out = vec![proto.zero_like(); self.dim];
        for (&(i, j), w) in &self.brackets {
            let coef = u[i].times(&v[j]).minus(&u[j].times(&v[i]));
            if coef.vanishes() {
                continue;
            }
            for (k, c) in w.iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].plus(&coef.scaled(c));
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.bracket_in(u, v, &Rational::zero())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        (0..self.dim).map(|i| (0..self.dim).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `tr ad e_j` for each `j`.
    pub fn trace_form(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|j| (0..self.dim).fold(Rational::zero(), |acc, i| acc + self.c(j, i, i)))
            .collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.trace_form().iter().all(Zero::is_zero)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        let mut violations = Vec::new();
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&e(i), &self.basis_bracket(j, k));
                    let b = self.bracket(&e(j), &self.basis_bracket(k, i));
                    let c = self.bracket(&e(k), &self.basis_bracket(i, j));
                    let defect: Vec<Rational> = (0..self.dim).map(|l| &a[l] + &b[l] + &c[l]).collect();
                    if defect.iter().any(|x| !x.is_zero()) {
                        violations.push(JacobiViolation { i, j, k, defect });
                    }
                }
            }
        }
        JacobiReport { ok: violations.is_empty(), violations }
    }

    /// Constant 1-form with the given coordinates.
    pub fn dual_form(&self, coords: &[Rational]) -> Graded<Rational> {
        Graded::degree_one(Kind::Form, coords.to_vec())
    }

    /// `d e_k* = -sum_{i<j} c_{ij}^k e_i* ^ e_j*`.
    pub fn d_basis(&self, k: usize) -> Graded<Rational> {
        let mut out = Graded::zero(Kind::Form, self.dim, 2);
        for (&(i, j), v) in &self.brackets {
            if !v[k].is_zero() {
                out.add_term(vec![i as u8, j as u8], -v[k].clone());
            }
        }
        out
    }

    /// Chevalley-Eilenberg differential on constant forms.
    pub fn ce_d(&self, form: &Graded<Rational>) -> Result<Graded<Rational>> {
        if form.kind() != Kind::Form || form.dim() != self.dim {
            return Err(Error::Dimension("form does not live on this algebra".into()));
        }
        let mut out = Graded::zero(Kind::Form, self.dim, form.degree() + 1);
        let one = Rational::one();
        let basis_d: Vec<Graded<Rational>> = (0..self.dim).map(|k| self.d_basis(k)).collect();
        for (blade, c) in form.terms() {
            for s in 0..blade.len() {
                let mut term = Graded::scalar(Kind::Form, self.dim, c.clone());
                for (t, &idx) in blade.iter().enumerate() {
                    let factor = if t == s {
                        basis_d[idx as usize].clone()
                    } else {
                        let mut e = Graded::zero(Kind::Form, self.dim, 1);
                        e.add_term(vec![idx], one.clone());
                        e
                    };
                    term = term.wedge(&factor)?;
                }
                if s % 2 == 1 {
                    term = term.negated();
                }
                out = out.plus(&term)?;
            }
        }
        Ok(out)
    }

    /// [`Self::ce_d`] for forms stored with polynomial coefficients, which
    /// must all be constant.
    pub fn ce_d_poly(&self, form: &Graded<Poly>) -> Result<Graded<Poly>> {
        let nvars = form.terms().next().map_or(self.dim, |(_, p)| p.num_vars());
        let mut consts = Graded::zero(Kind::Form, form.dim(), form.degree());
        for (b, p) in form.terms() {
            let c = p.as_constant().ok_or_else(|| {
                Error::Domain("the Chevalley-Eilenberg differential needs constant coefficients".into())
            })?;
            consts.add_term(b.to_vec(), c);
        }
        Ok(Graded::from_constant(&self.ce_d(&consts)?, nvars))
    }

    pub fn is_cocycle(&self, beta: &Graded<Rational>) -> Result<bool> {
        Ok(self.ce_d(beta)?.is_zero())
    }

    /// Whether `rho ^ (d rho)^k` is a volume form, `dim = 2k + 1`.
    pub fn contact_check(&self, rho: &[Rational]) -> Result<bool> {
        Ok(!self.contact_volume(rho)?.is_zero())
    }

    /// Coefficient of `rho ^ (d rho)^k` on `e_1* ^ ... ^ e_m*`.
    pub fn contact_volume(&self, rho: &[Rational]) -> Result<Rational> {
        if self.dim.is_multiple_of(2) {
            return Err(Error::Dimension(format!("contact forms need odd dimension, got {}", self.dim)));
        }
        let a = self.dual_form(rho);
        let da = self.ce_d(&a)?;
        let v = a.wedge(&da.wedge_power(self.dim / 2, Rational::one()))?;
        Ok(v.top_coefficient().cloned().unwrap_or_else(Rational::zero))
    }

    /// Lie-Poisson bivector `sum_{i<j} (sum_k c_{ij}^k x_k) d/dx_i ^ d/dx_j`.
    pub fn lie_poisson(&self) -> MultiVector {
        let mut out = Graded::zero(Kind::MultiVector, self.dim, 2);
        for (&(i, j), v) in &self.brackets {
            out.add_term(vec![i as u8, j as u8], Poly::linear(v));
        }
        out
    }

    /// Modular vector field `sum_j tr ad e_j d/dx_j`.
    pub fn modular_vector(&self) -> MultiVector {
        let n = self.dim;
        Graded::degree_one(Kind::MultiVector, self.trace_form().into_iter().map(|c| Poly::constant(n, c)).collect())
    }

    /// Basis of `{a : tr ad a = 0}`.
    pub fn unimodular_ideal(&self) -> Vec<Vec<Rational>> {
        let row = vec![self.trace_form()];
        ring::kernel_basis(&row, self.dim, &Rational::zero()).expect("rational field")
    }

    /// Basis of the span of all brackets.
    pub fn derived_ideal(&self) -> Vec<Vec<Rational>> {
        let mut rows: Matrix<Rational> = self.brackets.values().cloned().collect();
        if rows.is_empty() {
            return Vec::new();
        }
        let piv = ring::rref(&mut rows).expect("rational field");
        rows.truncate(piv.len());
        rows
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        // x is central iff [x, e_j] = 0 for all j: stack ad(e_j) rows.
        let mut rows = Vec::new();
        for j in 0..self.dim {
            let adj = self.ad_matrix(&self.basis_vector(j));
            rows.extend(adj);
        }
        ring::kernel_basis(&rows, self.dim, &Rational::zero()).expect("rational field")
    }

    /// Same algebra in the basis `e'_j = sum_i T_{ij} e_i`.
    pub fn change_of_basis(&self, t: &Matrix<Rational>) -> Result<LieAlgebra> {
        if t.len() != self.dim || t.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Dimension("change-of-basis matrix has the wrong shape".into()));
        }
        let tinv = ring::inverse(t).ok_or(Error::Singular)?;
        let col = |j: usize| -> Vec<Rational> { (0..self.dim).map(|i| t[i][j].clone()).collect() };
        let mut out = LieAlgebra::abelian(self.dim);
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let w = self.bracket(&col(a), &col(b));
                let w2 = ring::mat_vec(&tinv, &w, &Rational::zero());
                out.set_bracket(a, b, w2)?;
            }
        }
        Ok(out)
    }

    /// Matrix of `d alpha`: `B_{ij} = -alpha([e_i, e_j])`.
    fn d_matrix<F: ExactField>(&self, alpha: &[F], proto: &F) -> Matrix<F> {
        let mut b = vec![vec![proto.zero_like(); self.dim]; self.dim];
        for (&(i, j), w) in &self.brackets {
            let mut s = proto.zero_like();
            for (k, c) in w.iter().enumerate() {
                if !c.is_zero() {
                    s = s.plus(&alpha[k].scaled(c));
                }
            }
            b[i][j] = s.negated();
            b[j][i] = s;
        }
        b
    }

    /// The subalgebra `A_alpha` over an exact field. The outer error reports
    /// a zero divisor of a quotient ring.
    pub fn a_alpha_in<F: ExactField>(
        &self,
        alpha: &[F],
        proto: &F,
    ) -> std::result::Result<AAlphaOutcome<F>, ZeroDivisor> {
        let m = self.dim;
        let b = self.d_matrix(alpha, proto);
        if ring::rank(&b)? + 1 != m {
            return Ok(AAlphaOutcome::PreconditionFailed);
        }
        let ker = ring::kernel_basis(&b, m, proto)?;
        let u = ker.into_iter().next().expect("one-dimensional kernel");
        let au = alpha.iter().zip(&u).fold(proto.zero_like(), |s, (a, x)| s.plus(&a.times(x)));
        if !au.vanishes() {
            return Ok(AAlphaOutcome::Zero);
        }
        let v = ring::solve(&b, alpha, m, proto)?.expect("alpha annihilates the kernel");
        let w = self.bracket_in(&v, &u, proto);
        let abelian = w.iter().all(Coeff::vanishes);
        // [v, u] must be a multiple of u.
        let closed = {
            let p = u.iter().position(|x| !x.vanishes()).unwrap();
            let c = w[p].times(&u[p].inverse()?);
            w.iter().zip(&u).all(|(wi, ui)| wi.minus(&c.times(ui)).vanishes())
        };
        Ok(AAlphaOutcome::TwoDimensional { v, u, abelian, closed })
    }

    /// `A_alpha` for a rational dual element.
    pub fn subalgebra_a_alpha(&self, alpha: &[Rational]) -> Result<AAlphaOutcome<Rational>> {
        if self.dim.is_multiple_of(2) {
            return Err(Error::Dimension("A_alpha needs odd dimension".into()));
        }
        match self.a_alpha_in(alpha, &Rational::zero()).expect("rational field") {
            AAlphaOutcome::PreconditionFailed => Err(Error::Precondition("(d alpha)^(n-1) vanishes".into())),
            other => Ok(other),
        }
    }

    /// Decides whether `(alpha, beta)` is a generic couple.
    pub fn generic_couple_check(&self, alpha: &[Rational], beta: &[Rational]) -> Result<GenericCoupleReport> {
        let m = self.dim;
        if m.is_multiple_of(2) {
            return Err(Error::Dimension(format!("generic couples need odd dimension, got {m}")));
        }
        let n = m.div_ceil(2);
        let da = self.ce_d(&self.dual_form(alpha))?;
        let db = self.ce_d(&self.dual_form(beta))?;
        let forms_generic = pair_genericity(&da, &db)?.generic();

        let a_t = self.dual_form(alpha).to_uni().plus(&self.dual_form(beta).to_uni().times(&UniPoly::t()))?;
        let da_t = da.to_uni().plus(&db.to_uni().times(&UniPoly::t()))?;
        let vol = a_t.wedge(&da_t.wedge_power(n - 1, UniPoly::one()))?;
        let degeneracy = vol.top_coefficient().cloned().unwrap_or_else(UniPoly::zero);
        let beta_contact = !degeneracy.coeff(n).is_zero();

        let mut params = Vec::new();
        if !forms_generic {
            return Ok(GenericCoupleReport {
                generic: false,
                forms_generic,
                degeneracy,
                beta_contact,
                degenerate_parameters: params,
            });
        }
        if !beta_contact {
            let st = AAlphaStatus::of(&self.a_alpha_in(beta, &Rational::zero()).expect("rational field"));
            params.push(DegenerateParameter { value: ParamValue::Infinity, status: st });
        }
        let line = |t: &Arc<UniPoly>| -> std::result::Result<AAlphaOutcome<Residue>, ZeroDivisor> {
            let tt = Residue::root(t);
            let v: Vec<Residue> = alpha
                .iter()
                .zip(beta)
                .map(|(a, b)| Residue::from_rational(a.clone(), t).plus(&tt.scaled(b)))
                .collect();
            self.a_alpha_in(&v, &tt)
        };
        let mut roots_poly = degeneracy.clone();
        if degeneracy.is_zero() {
            // Every member is degenerate: work over Q(t), then revisit the
            // finitely many parameters where that computation does not
            // specialise.
            let proto = UniRatFunc::constant(Rational::zero());
            let v: Vec<UniRatFunc> = alpha
                .iter()
                .zip(beta)
                .map(|(a, b)| UniRatFunc::from_poly(UniPoly::from_coeffs(vec![a.clone(), b.clone()])))
                .collect();
            let out = self.a_alpha_in(&v, &proto).expect("field");
            let (status, exceptional) = generic_line_status(self, &out);
            params.push(DegenerateParameter { value: ParamValue::Generic, status });
            roots_poly = exceptional;
        }
        for (g, out) in split_evaluate(&roots_poly, line) {
            let value = if g.degree() == Some(1) {
                ParamValue::Rational(-g.coeff(0) / g.coeff(1))
            } else {
                ParamValue::RootOf(g)
            };
            params.push(DegenerateParameter { value, status: AAlphaStatus::of(&out) });
        }
        params.sort_by_key(|a| a.value.sort_key());
        let generic = params.iter().all(|p| p.status.acceptable());
        Ok(GenericCoupleReport { generic, forms_generic, degeneracy, beta_contact, degenerate_parameters: params })
    }
}

/// Status on the whole line over `Q(t)` and the polynomial whose roots need
/// separate treatment.
fn generic_line_status(alg: &LieAlgebra, out: &AAlphaOutcome<UniRatFunc>) -> (AAlphaStatus, UniPoly) {
    match out {
        AAlphaOutcome::TwoDimensional { v, u, abelian, .. } => {
            let mut e = UniPoly::one();
            for x in v.iter().chain(u) {
                e = &e * x.den();
            }
            if !abelian {
                let proto = UniRatFunc::constant(Rational::zero());
                let w = alg.bracket_in(v, u, &proto);
                let p = u.iter().position(|x| !x.vanishes()).unwrap();
                let c = w[p].times(&u[p].inverse().unwrap());
                e = &(&e * c.num()) * c.den();
            }
            (AAlphaStatus::of(out), e)
        }
        other => (AAlphaStatus::of(other), UniPoly::one()),
    }
}

/// `A_alpha`: zero for contact `alpha`, otherwise spanned by a Hamiltonian
/// `v` (`i_v d alpha = -alpha`) and a generator `u` of `Ker d alpha`.
#[derive(Clone, Debug, PartialEq)]
pub enum AAlphaOutcome<F> {
    Zero,
    TwoDimensional { v: Vec<F>, u: Vec<F>, abelian: bool, closed: bool },
    PreconditionFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AAlphaStatus {
    Zero,
    NonAbelian,
    Abelian,
    PreconditionFailed,
}

impl AAlphaStatus {
    pub fn of<F>(o: &AAlphaOutcome<F>) -> Self {
        match o {
            AAlphaOutcome::Zero => AAlphaStatus::Zero,
            AAlphaOutcome::TwoDimensional { abelian: true, .. } => AAlphaStatus::Abelian,
            AAlphaOutcome::TwoDimensional { .. } => AAlphaStatus::NonAbelian,
            AAlphaOutcome::PreconditionFailed => AAlphaStatus::PreconditionFailed,
        }
    }

    pub fn acceptable(self) -> bool {
        matches!(self, AAlphaStatus::Zero | AAlphaStatus::NonAbelian)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AAlphaStatus::Zero => "zero",
            AAlphaStatus::NonAbelian => "non-abelian",
            AAlphaStatus::Abelian => "abelian",
            AAlphaStatus::PreconditionFailed => "precondition-failed",
        }
    }
}

/// Parameter `t` of `alpha + t beta`.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Rational(Rational),
    /// Every root of this squarefree monic polynomial.
    RootOf(UniPoly),
    /// All parameters outside the other listed values.
    Generic,
    /// The member `beta`.
    Infinity,
}

impl ParamValue {
    fn sort_key(&self) -> (u8, Option<Rational>, usize) {
        match self {
            ParamValue::Rational(r) => (0, Some(r.clone()), 0),
            ParamValue::RootOf(g) => (1, None, g.degree().unwrap_or(0)),
            ParamValue::Infinity => (2, None, 0),
            ParamValue::Generic => (3, None, 0),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ParamValue::Rational(r) => format!("t = {}", ring::format_rational(r)),
            ParamValue::RootOf(g) => format!("t a root of {g}"),
            ParamValue::Generic => "generic t".into(),
            ParamValue::Infinity => "t = infinity (beta)".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateParameter {
    pub value: ParamValue,
    pub status: AAlphaStatus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericCoupleReport {
    pub generic: bool,
    /// Whether `(d alpha, d beta)` is a generic pair of 2-forms.
    pub forms_generic: bool,
    /// Volume coefficient of `(alpha + t beta) ^ (d alpha + t d beta)^(n-1)`.
    pub degeneracy: UniPoly,
    pub beta_contact: bool,
    /// Non-contact members of the pencil with their `A` status.
    pub degenerate_parameters: Vec<DegenerateParameter>,
}

impl GenericCoupleReport {
    /// First member whose `A` is abelian or ill-defined.
    pub fn witness(&self) -> Option<&DegenerateParameter> {
        self.degenerate_parameters.iter().find(|p| !p.status.acceptable())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn truncated(m: usize) -> LieAlgebra {
        let mut br = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if i + j <= m + 1 {
                    let mut v = vec![rat(0); m];
                    v[i + j - 2] = rat((j - i) as i64);
                    br.push((i - 1, j - 1, v));
                }
            }
        }
        LieAlgebra::from_brackets(m, None, br).unwrap()
    }

    fn unit(m: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); m];
        v[i] = rat(1);
        v
    }

    #[test]
    fn abelian_algebra_is_trivially_fine() {
        let a = LieAlgebra::abelian(4);
        assert!(a.jacobi_check().ok);
        assert!(a.lie_poisson().is_zero());
        assert!(a.is_unimodular());
        let w = a.dual_form(&[rat(1), rat(2), rat(0), rat(3)]);
        assert!(a.ce_d(&w).unwrap().is_zero());
        assert_eq!(a.unimodular_ideal().len(), 4);
    }

    #[test]
    fn perturbed_constant_breaks_jacobi() {
        let mut t = truncated(5);
        assert!(t.jacobi_check().ok);
        let mut v = t.basis_bracket(1, 2);
        v[4] += rat(1);
        t.set_bracket(1, 2, v).unwrap();
        let rep = t.jacobi_check();
        assert!(!rep.ok);
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn ce_differential_squares_to_zero() {
        let t = truncated(5);
        for k in 0..5 {
            let d1 = t.d_basis(k);
            assert_eq!(t.ce_d(&t.dual_form(&unit(5, k))).unwrap(), d1);
            assert!(t.ce_d(&d1).unwrap().is_zero());
        }
    }

    #[test]
    fn non_constant_forms_rejected() {
        let t = truncated(3);
        let f = crate::exterior::dx(3, 3, 0).times(&Poly::var(3, 1));
        assert!(matches!(t.ce_d_poly(&f), Err(Error::Domain(_))));
    }

    #[test]
    fn contact_needs_odd_dimension() {
        let a = LieAlgebra::abelian(4);
        assert!(matches!(a.contact_check(&unit(4, 0)), Err(Error::Dimension(_))));
        assert!(!truncated(5).contact_check(&vec![rat(0); 5]).unwrap());
    }

    #[test]
    fn a_alpha_of_truncated_algebra() {
        let t = truncated(5);
        match t.subalgebra_a_alpha(&unit(5, 4)).unwrap() {
            AAlphaOutcome::TwoDimensional { v, u, abelian, closed } => {
                assert!(!abelian && closed);
                // span{v, u} = span{e1, e3}
                for x in [&v, &u] {
                    assert!(x[1].is_zero() && x[3].is_zero() && x[4].is_zero());
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn change_of_basis_by_identity() {
        let t = truncated(5);
        let id: Matrix<Rational> = (0..5).map(|i| unit(5, i)).collect();
        assert_eq!(t.change_of_basis(&id).unwrap(), t);
        let sing = vec![vec![rat(0); 5]; 5];
        assert_eq!(t.change_of_basis(&sing), Err(Error::Singular));
    }
}
