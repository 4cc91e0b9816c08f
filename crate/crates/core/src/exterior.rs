//! Differential forms and multivector fields on `Q^m`.
//!
//! A [`Graded`] value is a homogeneous element of the exterior algebra with
//! coefficients in any [`Coeff`] ring. Blades are stored as strictly
//! increasing 0-based index tuples; text and JSON use 1-based indices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{self, Coeff, Differentiable, Matrix, Poly, RatFunc, Rational, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Form,
    MultiVector,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Form => "form",
            Kind::MultiVector => "multivector",
        }
    }
}

/// Homogeneous exterior element of fixed kind, dimension and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<R> {
    kind: Kind,
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<u8>, R>,
}

pub type DiffForm = Graded<Poly>;
pub type MultiVector = Graded<Poly>;

/// Parity of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [u8]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] < w[1]).then_some(odd)
}

/// Sign and merged blade of `a ^ b`, `None` when they share an index.
fn merge(a: &[u8], b: &[u8]) -> Option<(bool, Vec<u8>)> {
    let mut odd = false;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((odd, out))
}

impl<R: Coeff> Graded<R> {
    pub fn zero(kind: Kind, dim: usize, degree: usize) -> Self {
        Graded { kind, dim, degree, terms: BTreeMap::new() }
    }

    /// Builds from possibly unsorted 0-based index tuples; repeated indices
    /// give zero and sorting contributes the permutation sign.
    pub fn from_terms(
        kind: Kind,
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, R)>,
    ) -> Result<Self> {
        let mut g = Self::zero(kind, dim, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Dimension(format!(
                    "index tuple of length {} in a degree-{degree} element",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::Dimension(format!("index {} exceeds dimension {dim}", bad + 1)));
            }
            let mut b: Vec<u8> = idx.iter().map(|&i| i as u8).collect();
            if let Some(odd) = sort_sign(&mut b) {
                g.add_term(b, if odd { c.negated() } else { c });
            }
        }
        Ok(g)
    }

    /// Degree-1 element with the given components.
    pub fn degree_one(kind: Kind, comps: Vec<R>) -> Self {
        let dim = comps.len();
        let mut g = Self::zero(kind, dim, 1);
        for (i, c) in comps.into_iter().enumerate() {
            g.add_term(vec![i as u8], c);
        }
        g
    }

    pub fn scalar(kind: Kind, dim: usize, c: R) -> Self {
        let mut g = Self::zero(kind, dim, 0);
        g.add_term(Vec::new(), c);
        g
    }

    /// Adds `c` at a sorted blade, dropping zero coefficients.
    pub fn add_term(&mut self, blade: Vec<u8>, c: R) {
        debug_assert!(blade.windows(2).all(|w| w[0] < w[1]));
        if c.vanishes() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.vanishes() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by sorted 0-based blades.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &R)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient at a sorted 0-based blade.
    pub fn get(&self, blade: &[usize]) -> Option<&R> {
        let b: Vec<u8> = blade.iter().map(|&i| i as u8).collect();
        self.terms.get(&b)
    }

    /// Components of a degree-1 element, `zero` where absent.
    pub fn components(&self, zero: &R) -> Vec<R> {
        assert_eq!(self.degree, 1, "components of a non-vector");
        (0..self.dim)
            .map(|i| self.terms.get(&vec![i as u8]).cloned().unwrap_or_else(|| zero.clone()))
            .collect()
    }

    /// Coefficient of the top blade when `degree == dim`.
    pub fn top_coefficient(&self) -> Option<&R> {
        if self.degree != self.dim {
            return None;
        }
        self.terms.values().next()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::Kind(format!("{} and {}", self.kind.as_str(), other.kind.as_str())));
        }
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.degree != other.degree {
            return Err(Error::Dimension(format!("degrees {} and {}", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        self.map(|a| a.scaled(c))
    }

    /// Multiplies every coefficient by a ring element.
    pub fn times(&self, f: &R) -> Self {
        self.map(|a| a.times(f))
    }

    /// Applies `f` to every coefficient; zero images are dropped.
    pub fn map<S: Coeff>(&self, mut f: impl FnMut(&R) -> S) -> Graded<S> {
        let mut out = Graded::zero(self.kind, self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    /// Same data tagged with the other kind.
    pub fn with_kind(&self, kind: Kind) -> Self {
        Graded { kind, ..self.clone() }
    }

    /// Exterior product; degrees beyond `dim` give the zero element.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.kind, self.dim, self.degree + other.degree);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((odd, blade)) = merge(ba, bb) {
                    let p = ca.times(cb);
                    out.add_term(blade, if odd { p.negated() } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0` the scalar `one`.
    pub fn wedge_power(&self, k: usize, one: R) -> Self {
        let mut out = Self::scalar(self.kind, self.dim, one);
        for _ in 0..k {
            out = out.wedge(self).expect("same kind");
        }
        out
    }

    /// Contraction `i_v a` of a form by a vector field.
    pub fn interior(v: &Self, a: &Self) -> Result<Self> {
        if v.kind != Kind::MultiVector || v.degree != 1 {
            return Err(Error::Kind("interior product needs a vector field".into()));
        }
        if a.kind != Kind::Form {
            return Err(Error::Kind("interior product acts on forms".into()));
        }
        if v.dim != a.dim {
            return Err(Error::Dimension(format!("dimensions {} and {}", v.dim, a.dim)));
        }
        let mut out = Self::zero(Kind::Form, a.dim, a.degree.saturating_sub(1));
        if a.degree == 0 {
            return Ok(out);
        }
        for (b, c) in &a.terms {
            for (s, &i) in b.iter().enumerate() {
                let Some(vi) = v.terms.get(&vec![i]) else { continue };
                let mut rest = b.clone();
                rest.remove(s);
                let p = vi.times(c);
                out.add_term(rest, if s % 2 == 1 { p.negated() } else { p });
            }
        }
        Ok(out)
    }

    /// Contraction `Lambda(alpha, .)` of a bivector with a 1-form given by
    /// components: `v_j = sum_i alpha_i Lambda^{ij}`.
    pub fn contract_bivector(&self, alpha: &[R], zero: &R) -> Self {
        assert_eq!(self.degree, 2);
        let mut comps = vec![zero.clone(); self.dim];
        for (b, c) in &self.terms {
            let (i, j) = (b[0] as usize, b[1] as usize);
            comps[j] = comps[j].plus(&alpha[i].times(c));
            comps[i] = comps[i].minus(&alpha[j].times(c));
        }
        Self::degree_one(Kind::MultiVector, comps)
    }

    /// Skew matrix of a degree-2 element.
    pub fn skew_matrix(&self, zero: &R) -> Matrix<R> {
        assert_eq!(self.degree, 2);
        let mut m = vec![vec![zero.clone(); self.dim]; self.dim];
        for (b, c) in &self.terms {
            let (i, j) = (b[0] as usize, b[1] as usize);
            m[i][j] = c.clone();
            m[j][i] = c.negated();
        }
        m
    }

    /// Degree-2 element from the upper triangle of a matrix.
    pub fn from_skew_matrix(kind: Kind, m: &Matrix<R>) -> Self {
        let n = m.len();
        let mut g = Self::zero(kind, n, 2);
        for i in 0..n {
            for j in i + 1..n {
                g.add_term(vec![i as u8, j as u8], m[i][j].clone());
            }
        }
        g
    }
}

impl<R: Differentiable> Graded<R> {
    /// Exterior derivative in the first `dim` variables.
    pub fn d(&self) -> Result<Self> {
        if self.kind != Kind::Form {
            return Err(Error::Kind("exterior derivative of a multivector".into()));
        }
        let mut out = Self::zero(Kind::Form, self.dim, self.degree + 1);
        if self.degree >= self.dim {
            return Ok(out);
        }
        for (b, c) in &self.terms {
            for j in 0..self.dim {
                let jj = j as u8;
                if b.contains(&jj) {
                    continue;
                }
                let dc = c.partial(j);
                if dc.vanishes() {
                    continue;
                }
                let before = b.iter().filter(|&&i| i < jj).count();
                let mut blade = b.clone();
                blade.insert(before, jj);
                out.add_term(blade, if before % 2 == 1 { dc.negated() } else { dc });
            }
        }
        Ok(out)
    }
}

impl Graded<Poly> {
    /// Evaluates every coefficient at a point.
    pub fn eval(&self, point: &[Rational]) -> Graded<Rational> {
        self.map(|p| p.eval(point))
    }

    /// Constant element with coefficients lifted into `nvars` variables.
    pub fn from_constant(g: &Graded<Rational>, nvars: usize) -> Self {
        g.map(|c| Poly::constant(nvars, c.clone()))
    }

    /// Whether every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    pub fn to_ratfunc(&self) -> Graded<RatFunc> {
        self.map(|p| RatFunc::from_poly(p.clone()))
    }
}

impl Graded<Rational> {
    pub fn to_uni(&self) -> Graded<UniPoly> {
        self.map(|c| UniPoly::constant(c.clone()))
    }
}

/// Constant volume form `coeff * dx_1 ^ ... ^ dx_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    pub dim: usize,
    pub coeff: Rational,
}

impl VolumeForm {
    pub fn standard(dim: usize) -> Self {
        VolumeForm { dim, coeff: Rational::one() }
    }

    pub fn new(dim: usize, coeff: Rational) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::Degenerate("zero volume form".into()));
        }
        Ok(VolumeForm { dim, coeff })
    }

    pub fn to_form(&self, nvars: usize) -> DiffForm {
        let mut g = Graded::zero(Kind::Form, self.dim, self.dim);
        g.add_term((0..self.dim as u8).collect(), Poly::constant(nvars, self.coeff.clone()));
        g
    }
}

/// Complement of `{i, j}` in `0..m`.
fn complement_pair(m: usize, i: usize, j: usize) -> Vec<u8> {
    (0..m).filter(|&k| k != i && k != j).map(|k| k as u8).collect()
}

/// `(-1)^{i+j-1}` in 1-based indices equals `(-1)^{i+j+1}` in 0-based ones.
fn pair_sign_odd(i: usize, j: usize) -> bool {
    (i + j + 1) % 2 == 1
}

/// The (m-2)-form `omega` with `Lambda(a, b) Omega = a ^ b ^ omega`.
pub fn form_from_bivector<R: Coeff>(lambda: &Graded<R>, omega: &VolumeForm) -> Result<Graded<R>> {
    if lambda.kind != Kind::MultiVector || lambda.degree != 2 {
        return Err(Error::Kind("expected a bivector".into()));
    }
    if lambda.dim != omega.dim || lambda.dim < 2 {
        return Err(Error::Dimension("bivector and volume form dimensions differ".into()));
    }
    let m = lambda.dim;
    let mut out = Graded::zero(Kind::Form, m, m - 2);
    for (b, c) in &lambda.terms {
        let (i, j) = (b[0] as usize, b[1] as usize);
        let v = c.scaled(&omega.coeff);
        out.add_term(complement_pair(m, i, j), if pair_sign_odd(i, j) { v.negated() } else { v });
    }
    Ok(out)
}

/// Inverse of [`form_from_bivector`].
pub fn bivector_from_form<R: Coeff>(form: &Graded<R>, omega: &VolumeForm) -> Result<Graded<R>> {
    if form.kind != Kind::Form {
        return Err(Error::Kind("expected a form".into()));
    }
    if form.dim != omega.dim || form.dim < 2 || form.degree != form.dim - 2 {
        return Err(Error::Dimension("expected an (m-2)-form matching the volume form".into()));
    }
    let m = form.dim;
    let inv = omega.coeff.recip();
    let mut out = Graded::zero(Kind::MultiVector, m, 2);
    for (b, c) in &form.terms {
        let missing: Vec<usize> = (0..m).filter(|k| !b.contains(&(*k as u8))).collect();
        let (i, j) = (missing[0], missing[1]);
        let v = c.scaled(&inv);
        out.add_term(vec![i as u8, j as u8], if pair_sign_odd(i, j) { v.negated() } else { v });
    }
    Ok(out)
}

/// The vector field `v` with `i_v Omega = -alpha ^ omega`, equal to
/// `Lambda(alpha, .)` for the bivector represented by `(omega, Omega)`.
pub fn hamiltonian_field<R: Coeff>(alpha: &Graded<R>, form: &Graded<R>, omega: &VolumeForm) -> Result<Graded<R>> {
    if alpha.degree != 1 || form.degree + 2 != form.dim {
        return Err(Error::Dimension("expected a 1-form and an (m-2)-form".into()));
    }
    let c = alpha.wedge(form)?.negated();
    let m = form.dim;
    let inv = omega.coeff.recip();
    let mut out = Graded::zero(Kind::MultiVector, m, 1);
    for (b, coef) in &c.terms {
        let s = (0..m).find(|k| !b.contains(&(*k as u8))).unwrap();
        let v = coef.scaled(&inv);
        out.add_term(vec![s as u8], if s % 2 == 1 { v.negated() } else { v });
    }
    Ok(out)
}

/// Representative `(k a_1^..^a_r^beta^{k-1}, a_1^..^a_r^beta^k)` of the
/// bivector whose kernel is spanned by the `a_i` and which is dual to `beta`
/// on their common kernel, where `m = 2k + r`.
pub fn representative_from_kernel_data<R: Coeff>(
    alphas: &[Graded<R>],
    beta: &Graded<R>,
    one: R,
) -> Result<(Graded<R>, Graded<R>)> {
    let m = beta.dim;
    let r = alphas.len();
    if beta.kind != Kind::Form || beta.degree != 2 || alphas.iter().any(|a| a.degree != 1 || a.kind != Kind::Form) {
        return Err(Error::Kind("expected 1-forms and a 2-form".into()));
    }
    if r > m || !(m - r).is_multiple_of(2) || m == r {
        return Err(Error::Dimension(format!("m - r must be positive and even (m = {m}, r = {r})")));
    }
    let k = (m - r) / 2;
    let mut a = Graded::scalar(Kind::Form, m, one.clone());
    for alpha in alphas {
        a = a.wedge(alpha)?;
    }
    let bk1 = beta.wedge_power(k - 1, one);
    let w = a.wedge(&bk1)?;
    let vol = w.wedge(beta)?;
    if vol.is_zero() {
        return Err(Error::Degenerate("a_1 ^ ... ^ a_r ^ beta^k vanishes".into()));
    }
    let kq = Rational::from_integer((k as i64).into());
    Ok((w.scaled(&kq), vol))
}

/// Rank of the skew matrix of a 2-form at a point.
pub fn two_form_rank(beta: &DiffForm, point: &[Rational]) -> usize {
    let m = beta.eval(point).skew_matrix(&Rational::zero());
    ring::rank(&m).expect("rational field")
}

/// Rendering of coefficients inside exterior expressions.
pub trait Render {
    fn render(&self) -> String;
    /// Whether the rendering needs no parentheses before `*blade`.
    fn atomic(&self) -> bool;
}

impl Render for Rational {
    fn render(&self) -> String {
        ring::format_rational(self)
    }
    fn atomic(&self) -> bool {
        true
    }
}

impl Render for Poly {
    fn render(&self) -> String {
        self.to_string()
    }
    fn atomic(&self) -> bool {
        self.len() <= 1
    }
}

impl Render for RatFunc {
    fn render(&self) -> String {
        self.to_string()
    }
    fn atomic(&self) -> bool {
        self.den().is_constant() && self.num().len() <= 1
    }
}

impl Render for UniPoly {
    fn render(&self) -> String {
        self.to_string()
    }
    fn atomic(&self) -> bool {
        self.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl<R: Coeff + Render> Graded<R> {
    pub fn blade_name(&self, blade: &[u8]) -> String {
        if blade.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = blade
            .iter()
            .map(|&i| match self.kind {
                Kind::Form => format!("dx{}", i + 1),
                Kind::MultiVector => format!("d/dx{}", i + 1),
            })
            .collect();
        parts.join("^")
    }
}

impl<R: Coeff + Render> fmt::Display for Graded<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let name = self.blade_name(b);
            let cs = c.render();
            let body = if b.is_empty() {
                cs
            } else if cs == "1" {
                name
            } else if cs == "-1" {
                format!("-{name}")
            } else if c.atomic() {
                format!("{cs}*{name}")
            } else {
                format!("({cs})*{name}")
            };
            if k == 0 {
                out.push_str(&body);
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        f.write_str(&out)
    }
}

/// Coordinate 1-form `dx_{i+1}` with polynomial coefficients in `nvars`
/// variables.
pub fn dx(dim: usize, nvars: usize, i: usize) -> DiffForm {
    let mut g = Graded::zero(Kind::Form, dim, 1);
    g.add_term(vec![i as u8], Poly::one(nvars));
    g
}

/// Coordinate vector field `d/dx_{i+1}`.
pub fn partial(dim: usize, nvars: usize, i: usize) -> MultiVector {
    let mut g = Graded::zero(Kind::MultiVector, dim, 1);
    g.add_term(vec![i as u8], Poly::one(nvars));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn form(dim: usize, terms: Vec<(Vec<usize>, Poly)>) -> DiffForm {
        let deg = terms[0].0.len();
        Graded::from_terms(Kind::Form, dim, deg, terms.into_iter().map(|(i, p)| (i.iter().map(|k| k - 1).collect(), p))).unwrap()
    }

    #[test]
    fn antisymmetry_of_wedge() {
        let a = dx(2, 2, 0).wedge(&dx(2, 2, 1)).unwrap();
        let b = dx(2, 2, 1).wedge(&dx(2, 2, 0)).unwrap();
        assert_eq!(b, a.negated());
        assert_eq!(a.to_string(), "dx1^dx2");
    }

    #[test]
    fn square_of_commuting_blades() {
        let n = 4;
        let p = |i| partial(n, n, i);
        let l = p(0).wedge(&p(1)).unwrap().plus(&p(2).wedge(&p(3)).unwrap()).unwrap();
        let sq = l.wedge(&l).unwrap();
        let expect = p(0).wedge(&p(1)).unwrap().wedge(&p(2)).unwrap().wedge(&p(3)).unwrap().scaled(&rat(2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn mixing_kinds_is_an_error() {
        assert!(matches!(dx(3, 3, 0).wedge(&partial(3, 3, 1)), Err(Error::Kind(_))));
    }

    #[test]
    fn interior_product_signs() {
        let w = dx(2, 2, 0).wedge(&dx(2, 2, 1)).unwrap();
        assert_eq!(Graded::interior(&partial(2, 2, 0), &w).unwrap(), dx(2, 2, 1));
        assert_eq!(Graded::interior(&partial(2, 2, 1), &w).unwrap(), dx(2, 2, 0).negated());
    }

    #[test]
    fn single_blade_correspondence() {
        let vol = VolumeForm::standard(3);
        let l = bivector_from_form(&dx(3, 3, 2), &vol).unwrap();
        assert_eq!(l, partial(3, 3, 0).wedge(&partial(3, 3, 1)).unwrap());
        let zero: MultiVector = Graded::zero(Kind::MultiVector, 3, 2);
        assert!(form_from_bivector(&zero, &vol).unwrap().is_zero());
    }

    /// Pencil on K^5 whose representatives are printed explicitly.
    fn k5_pencil() -> (MultiVector, MultiVector, DiffForm, DiffForm) {
        let n = 5;
        let p = |i: usize| partial(n, n, i - 1);
        let xv = |i: usize| x(n, i - 1);
        let v = |c: Vec<(Poly, usize)>| {
            c.into_iter().fold(Graded::zero(Kind::MultiVector, n, 1), |acc, (f, i)| acc.plus(&p(i).times(&f)).unwrap())
        };
        let lam = v(vec![(xv(2), 1), (xv(3), 3)])
            .wedge(&p(4))
            .unwrap()
            .plus(&v(vec![(xv(1), 1), (xv(2), 2), (xv(3), 3)]).wedge(&p(5)).unwrap())
            .unwrap();
        let lam1 = p(2)
            .times(&xv(1))
            .wedge(&p(4))
            .unwrap()
            .plus(&v(vec![(xv(1), 1), (xv(2), 2)]).wedge(&p(5)).unwrap())
            .unwrap();
        let neg = |q: Poly| -&q;
        let omega = form(
            n,
            vec![
                (vec![1, 2, 4], neg(xv(3))),
                (vec![1, 3, 4], xv(2)),
                (vec![2, 3, 4], neg(xv(1))),
                (vec![1, 2, 5], xv(3)),
                (vec![2, 3, 5], xv(2)),
            ],
        );
        let omega1 = form(n, vec![(vec![1, 3, 4], xv(2)), (vec![2, 3, 4], neg(xv(1))), (vec![1, 3, 5], neg(xv(1)))]);
        (lam, lam1, omega, omega1)
    }

    #[test]
    fn k5_representatives_and_derivatives() {
        let (lam, lam1, omega, omega1) = k5_pencil();
        let vol = VolumeForm::standard(5);
        assert_eq!(form_from_bivector(&lam, &vol).unwrap(), omega);
        assert_eq!(form_from_bivector(&lam1, &vol).unwrap(), omega1);
        assert_eq!(bivector_from_form(&omega, &vol).unwrap(), lam);
        let one = Poly::one(5);
        let c = |k: i64| one.scale(&rat(k));
        let d_omega = form(5, vec![(vec![1, 2, 3, 4], c(-3)), (vec![1, 2, 3, 5], c(1))]);
        let d_omega1 = form(5, vec![(vec![1, 2, 3, 4], c(-2))]);
        assert_eq!(omega.d().unwrap(), d_omega);
        assert_eq!(omega1.d().unwrap(), d_omega1);
        assert_eq!(d_omega.to_string(), "-3*dx1^dx2^dx3^dx4 + dx1^dx2^dx3^dx5");
    }

    #[test]
    fn top_degree_derivative_is_zero() {
        let vol = VolumeForm::standard(3).to_form(3).times(&x(3, 0));
        let d = vol.d().unwrap();
        assert!(d.is_zero());
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn hamiltonian_field_of_zero() {
        let vol = VolumeForm::standard(3);
        let zero: DiffForm = Graded::zero(Kind::Form, 3, 1);
        let v = hamiltonian_field(&zero, &dx(3, 3, 2), &vol).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn kernel_data_representatives() {
        let (omega, vol) = representative_from_kernel_data(
            &[dx(3, 3, 0)],
            &dx(3, 3, 1).wedge(&dx(3, 3, 2)).unwrap(),
            Poly::one(3),
        )
        .unwrap();
        assert_eq!(omega, dx(3, 3, 0));
        assert_eq!(vol, VolumeForm::standard(3).to_form(3));
        let beta = dx(3, 3, 1).wedge(&dx(3, 3, 2)).unwrap();
        let err = representative_from_kernel_data(&[dx(3, 3, 1)], &beta, Poly::one(3));
        assert!(matches!(err, Err(Error::Degenerate(_))));
    }

    #[test]
    fn two_form_ranks() {
        let w = dx(4, 4, 0).wedge(&dx(4, 4, 1)).unwrap();
        assert_eq!(two_form_rank(&w, &[rat(0), rat(0), rat(0), rat(0)]), 2);
        let s = w.plus(&dx(4, 4, 2).wedge(&dx(4, 4, 3)).unwrap()).unwrap();
        assert_eq!(two_form_rank(&s, &[rat(1), ratio(1, 2), rat(0), rat(3)]), 4);
    }

    #[test]
    fn display_of_fields() {
        let v = partial(2, 2, 0).scaled(&rat(10));
        assert_eq!(v.to_string(), "10*d/dx1");
        let w = dx(2, 2, 0).times(&(&x(2, 0) + &x(2, 1))).plus(&dx(2, 2, 1).times(&-&x(2, 0))).unwrap();
        assert_eq!(w.to_string(), "(x1 + x2)*dx1 - x1*dx2");
    }
}
