//! Pairs of bivector fields `(Lambda, Lambda_1)` and their genericity.
//!
//! Pencils on the dual of a Lie algebra identify the constant 2-form
//! `e_i* ^ e_j*` with the bivector `d/dx_i ^ d/dx_j`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{form_from_bivector, DiffForm, Graded, Kind, MultiVector, VolumeForm};
use crate::liealg::{JacobiViolation, LieAlgebra};
use crate::ring::{self, Poly, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum PencilKind {
    /// Lie-Poisson bivector plus the constant bivector of a 2-cocycle.
    LinearPair { algebra: LieAlgebra, cocycle: Graded<Rational> },
    /// Lie-Poisson bivectors of two brackets on one space.
    LiePair { algebra: LieAlgebra, algebra2: LieAlgebra },
    /// Explicit bivector fields.
    Raw,
}

/// Pencil parameter: `Lambda + t Lambda_1`, or `Lambda_1` alone.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Finite(Rational),
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    dim: usize,
    kind: PencilKind,
    lambda: MultiVector,
    lambda1: MultiVector,
    omega: DiffForm,
    omega1: DiffForm,
}

/// Object exhibiting a failed compatibility condition.
#[derive(Clone, Debug, PartialEq)]
pub enum CompatibilityWitness {
    CocycleDefect(Graded<Rational>),
    Jacobi { bracket: &'static str, violation: JacobiViolation },
    Integrability { member: &'static str, form: DiffForm },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Compatibility {
    pub ok: bool,
    pub witness: Option<CompatibilityWitness>,
}

/// Constant bivector with the coefficients of a constant 2-form.
pub fn bivector_of_two_form(beta: &Graded<Rational>, nvars: usize) -> MultiVector {
    Graded::from_constant(&beta.with_kind(Kind::MultiVector), nvars)
}

impl Pencil {
    fn assemble(kind: PencilKind, lambda: MultiVector, lambda1: MultiVector) -> Result<Self> {
        let dim = lambda.dim();
        if lambda1.dim() != dim {
            return Err(Error::Dimension("bivectors live in different dimensions".into()));
        }
        for l in [&lambda, &lambda1] {
            if l.kind() != Kind::MultiVector || l.degree() != 2 {
                return Err(Error::Kind("pencil members must be bivectors".into()));
            }
        }
        let vol = VolumeForm::standard(dim);
        let omega = form_from_bivector(&lambda, &vol)?;
        let omega1 = form_from_bivector(&lambda1, &vol)?;
        Ok(Pencil { dim, kind, lambda, lambda1, omega, omega1 })
    }

    pub fn linear_pair(algebra: LieAlgebra, cocycle: Graded<Rational>) -> Result<Self> {
        if cocycle.dim() != algebra.dim() || cocycle.degree() != 2 || cocycle.kind() != Kind::Form {
            return Err(Error::Dimension("cocycle must be a 2-form on the algebra".into()));
        }
        let n = algebra.dim();
        let lambda = algebra.lie_poisson();
        let lambda1 = bivector_of_two_form(&cocycle, n);
        Self::assemble(PencilKind::LinearPair { algebra, cocycle }, lambda, lambda1)
    }

    pub fn lie_pair(algebra: LieAlgebra, algebra2: LieAlgebra) -> Result<Self> {
        if algebra.dim() != algebra2.dim() {
            return Err(Error::Dimension("algebras of different dimensions".into()));
        }
        let lambda = algebra.lie_poisson();
        let lambda1 = algebra2.lie_poisson();
        Self::assemble(PencilKind::LiePair { algebra, algebra2 }, lambda, lambda1)
    }

    pub fn raw(lambda: MultiVector, lambda1: MultiVector) -> Result<Self> {
        Self::assemble(PencilKind::Raw, lambda, lambda1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn kind(&self) -> &PencilKind {
        &self.kind
    }
    pub fn lambda(&self) -> &MultiVector {
        &self.lambda
    }
    pub fn lambda1(&self) -> &MultiVector {
        &self.lambda1
    }
    /// Representative of `Lambda` for `Omega = dx_1 ^ ... ^ dx_m`.
    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }
    pub fn omega1(&self) -> &DiffForm {
        &self.omega1
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            PencilKind::LinearPair { .. } => "linear_pair",
            PencilKind::LiePair { .. } => "lie_pair",
            PencilKind::Raw => "raw",
        }
    }

    /// Exchanges the two members.
    pub fn swapped(&self) -> Result<Pencil> {
        Pencil::raw(self.lambda1.clone(), self.lambda.clone())
    }

    /// The pencil `((1-a) Lambda + a Lambda_1, Lambda_1)`.
    pub fn reparametrized(&self, a: &Rational) -> Result<Pencil> {
        let l = self.lambda.scaled(&(Rational::one() - a)).plus(&self.lambda1.scaled(a))?;
        Pencil::raw(l, self.lambda1.clone())
    }

    /// Replaces `Lambda_1` by `Lambda_1 + a Lambda(p)` for a linear pair.
    pub fn shift_second(&self, a: &Rational, point: &[Rational]) -> Result<Pencil> {
        match &self.kind {
            PencilKind::LinearPair { algebra, cocycle } => {
                // Lambda(p) corresponds to the exact 2-form -dp.
                let dp = algebra.ce_d(&algebra.dual_form(point))?;
                let beta = cocycle.minus(&dp.scaled(a))?;
                Pencil::linear_pair(algebra.clone(), beta)
            }
            _ => Err(Error::Unsupported("shifting by Lambda(p) is implemented for linear pairs".into())),
        }
    }

    pub fn compatibility_check(&self) -> Result<Compatibility> {
        let ok = |w: Option<CompatibilityWitness>| Compatibility { ok: w.is_none(), witness: w };
        match &self.kind {
            PencilKind::LinearPair { algebra, cocycle } => {
                let d = algebra.ce_d(cocycle)?;
                Ok(ok((!d.is_zero()).then_some(CompatibilityWitness::CocycleDefect(d))))
            }
            PencilKind::LiePair { algebra, algebra2 } => {
                let sum = sum_algebra(algebra, algebra2)?;
                for (name, alg) in [("first", algebra), ("second", algebra2), ("sum", &sum)] {
                    if let Some(v) = alg.jacobi_check().violations.into_iter().next() {
                        return Ok(ok(Some(CompatibilityWitness::Jacobi { bracket: name, violation: v })));
                    }
                }
                Ok(ok(None))
            }
            PencilKind::Raw => {
                if self.dim < 3 {
                    return Ok(ok(None));
                }
                if self.dim > 3 {
                    return Err(Error::Unsupported(
                        "compatibility of explicit bivectors is only decided in dimension 3".into(),
                    ));
                }
                let sum = self.omega.plus(&self.omega1)?;
                for (name, w) in [("first", &self.omega), ("second", &self.omega1), ("sum", &sum)] {
                    let t = w.wedge(&w.d()?)?;
                    if !t.is_zero() {
                        return Ok(ok(Some(CompatibilityWitness::Integrability { member: name, form: t })));
                    }
                }
                Ok(ok(None))
            }
        }
    }

    /// `Lambda + t Lambda_1` (or `Lambda_1`) evaluated at a point.
    pub fn member_at(&self, point: &[Rational], t: &Param) -> Graded<Rational> {
        match t {
            Param::Infinity => self.lambda1.eval(point),
            Param::Finite(t) => {
                self.lambda.eval(point).plus(&self.lambda1.eval(point).scaled(t)).expect("same shape")
            }
        }
    }

    pub fn rank_at(&self, point: &[Rational], t: &Param) -> Result<usize> {
        self.check_point(point)?;
        let m = self.member_at(point, t).skew_matrix(&Rational::zero());
        Ok(ring::rank(&m).expect("rational field"))
    }

    fn check_point(&self, point: &[Rational]) -> Result<()> {
        let nvars = self.num_vars();
        if point.len() != nvars {
            return Err(Error::Dimension(format!("point has {} coordinates, expected {nvars}", point.len())));
        }
        Ok(())
    }

    /// Number of polynomial variables of the coefficients.
    pub fn num_vars(&self) -> usize {
        self.lambda
            .terms()
            .chain(self.lambda1.terms())
            .next()
            .map_or(self.dim, |(_, p)| p.num_vars())
    }

    pub fn generic_at(&self, point: &[Rational]) -> Result<GenericityCertificate> {
        self.check_point(point)?;
        let mut cert = pair_genericity(&self.lambda.eval(point), &self.lambda1.eval(point))?;
        cert.point = point.to_vec();
        Ok(cert)
    }

    /// Random search for a generic point; see [`find_generic_point_in`].
    pub fn find_generic_point(&self, budget: usize, seed: u64) -> Result<Option<Vec<Rational>>> {
        self.find_generic_point_in(budget, seed, |_| true)
    }

    /// Samples points with coordinates `p/q`, `|p| <= N`, `1 <= q <= N`,
    /// where `N` grows with the trial number, and returns the first one
    /// accepted by `accept` at which the pencil is generic.
    pub fn find_generic_point_in(
        &self,
        budget: usize,
        seed: u64,
        accept: impl Fn(&[Rational]) -> bool,
    ) -> Result<Option<Vec<Rational>>> {
        if self.dim.is_multiple_of(2) {
            return Err(Error::Dimension(format!("genericity is defined in odd dimension, got {}", self.dim)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nvars = self.num_vars();
        for trial in 0..budget {
            let n = 2 + (trial / 10) as i64;
            let point: Vec<Rational> =
                (0..nvars).map(|_| ring::ratio(rng.gen_range(-n..=n), rng.gen_range(1..=n))).collect();
            if !accept(&point) {
                continue;
            }
            if self.generic_at(&point)?.generic() {
                return Ok(Some(point));
            }
        }
        Ok(None)
    }

    /// Basis of the constant 1-forms in the kernel of the member at `t`.
    pub fn casimirs_at(&self, point: &[Rational], t: &Param) -> Result<Vec<Vec<Rational>>> {
        self.check_point(point)?;
        let m = self.member_at(point, t).skew_matrix(&Rational::zero());
        Ok(ring::kernel_basis(&m, self.dim, &Rational::zero()).expect("rational field"))
    }
}

/// Bracket `[,] + [,]_1` on a common space.
pub fn sum_algebra(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra> {
    combine_algebras(a, &Rational::one(), b, &Rational::one())
}

/// Bracket `s [,] + s1 [,]_1`.
pub fn combine_algebras(a: &LieAlgebra, s: &Rational, b: &LieAlgebra, s1: &Rational) -> Result<LieAlgebra> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension("algebras of different dimensions".into()));
    }
    let m = a.dim();
    let mut out = LieAlgebra::abelian(m).with_labels(a.labels().to_vec())?;
    for i in 0..m {
        for j in i + 1..m {
            let u = a.basis_bracket(i, j);
            let v = b.basis_bracket(i, j);
            out.set_bracket(i, j, u.iter().zip(&v).map(|(x, y)| x * s + y * s1).collect())?;
        }
    }
    Ok(out)
}

/// Components of `(A + t B)^(n-1)` as polynomials in `t`, their gcd, and
/// whether `B^(n-1)` is nonzero. Generic exactly when the gcd is constant
/// and `B^(n-1) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericityCertificate {
    pub point: Vec<Rational>,
    /// `(blade, polynomial)` with 0-based blades.
    pub t_polynomials: Vec<(Vec<usize>, UniPoly)>,
    /// `None` when every component vanishes.
    pub gcd: Option<UniPoly>,
    pub leading_ok: bool,
}

impl GenericityCertificate {
    pub fn generic(&self) -> bool {
        self.leading_ok && self.gcd.as_ref().is_some_and(UniPoly::is_constant)
    }
}

/// Genericity of a constant pair `(a, b)` of degree-2 elements.
pub fn pair_genericity(a: &Graded<Rational>, b: &Graded<Rational>) -> Result<GenericityCertificate> {
    let m = a.dim();
    if m.is_multiple_of(2) {
        return Err(Error::Dimension(format!("genericity is defined in odd dimension, got {m}")));
    }
    let n1 = (m - 1) / 2;
    let at = a.to_uni().plus(&b.to_uni().times(&UniPoly::t()))?;
    let p = at.wedge_power(n1, UniPoly::one());
    let t_polynomials: Vec<(Vec<usize>, UniPoly)> =
        p.terms().map(|(bl, c)| (bl.iter().map(|&i| i as usize).collect(), c.clone())).collect();
    let mut gcd: Option<UniPoly> = None;
    for (_, c) in &t_polynomials {
        gcd = Some(match gcd {
            None => c.monic(),
            Some(g) => g.gcd(c)?,
        });
    }
    let leading_ok = !b.wedge_power(n1, Rational::one()).is_zero();
    Ok(GenericityCertificate { point: Vec::new(), t_polynomials, gcd, leading_ok })
}

/// Constant 2-form `sum c_ij dx_i ^ dx_j` from its skew matrix.
pub fn two_form_from_matrix(m: &ring::Matrix<Rational>) -> Graded<Rational> {
    Graded::from_skew_matrix(Kind::Form, m)
}

/// `Poly` helper: the lifted constant bivector of a 2-form with `nvars`
/// polynomial variables.
pub fn lift_constant(g: &Graded<Rational>, nvars: usize) -> Graded<Poly> {
    Graded::from_constant(g, nvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn ex2() -> Pencil {
        let m = 5;
        let v = |k: usize, c: i64| {
            let mut x = vec![rat(0); m];
            x[k] = rat(c);
            x
        };
        let alg = LieAlgebra::from_brackets(m, None, vec![(0, 4, v(4, 1)), (1, 2, v(2, 1)), (1, 3, v(3, -1))]).unwrap();
        let beta = Graded::from_terms(Kind::Form, m, 2, vec![(vec![0, 1], rat(1)), (vec![2, 3], rat(1))]).unwrap();
        Pencil::linear_pair(alg, beta).unwrap()
    }

    #[test]
    fn flat_linear_pair_is_compatible_and_generic() {
        let p = ex2();
        assert!(p.compatibility_check().unwrap().ok);
        let pt: Vec<Rational> = [0, 0, 1, 0, 1].iter().map(|&v| rat(v)).collect();
        assert!(p.generic_at(&pt).unwrap().generic());
        let c = p.casimirs_at(&pt, &Param::Infinity).unwrap();
        assert_eq!(c, vec![vec![rat(0), rat(0), rat(0), rat(0), rat(1)]]);
    }

    #[test]
    fn proportional_members_are_not_generic() {
        let p = ex2();
        let q = Pencil::raw(p.lambda().clone(), p.lambda().clone()).unwrap();
        let pt: Vec<Rational> = [1, 2, 1, 3, 1].iter().map(|&v| rat(v)).collect();
        assert!(!q.generic_at(&pt).unwrap().generic());
        assert_eq!(q.find_generic_point(30, 1).unwrap(), None);
    }

    #[test]
    fn zero_pencil_rank() {
        let z: MultiVector = Graded::zero(Kind::MultiVector, 3, 2);
        let p = Pencil::raw(z.clone(), z).unwrap();
        assert_eq!(p.rank_at(&[rat(1), rat(2), rat(3)], &Param::Finite(rat(1))).unwrap(), 0);
    }

    #[test]
    fn even_dimension_rejected_for_genericity() {
        let z: MultiVector = Graded::zero(Kind::MultiVector, 4, 2);
        let p = Pencil::raw(z.clone(), z).unwrap();
        assert!(matches!(p.generic_at(&vec![rat(0); 4]), Err(Error::Dimension(_))));
    }

    #[test]
    fn raw_compatibility_unsupported_above_three() {
        let p = ex2();
        let r = Pencil::raw(p.lambda().clone(), p.lambda1().clone()).unwrap();
        assert!(matches!(r.compatibility_check(), Err(Error::Unsupported(_))));
    }
}
