use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use super::{Coeff, Differentiable};
use crate::error::{Error, Result};

/// Quotient of two polynomials.
///
/// Normalisation is cheap rather than complete: the denominator is made
/// monic, common monomial and rational content is removed, and one side is
/// cancelled when it divides the other exactly. Equality is decided by
/// cross-multiplication, so it is exact regardless.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.num_vars() != den.num_vars() {
            return Err(Error::Dimension("numerator and denominator variable counts differ".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.num_vars();
        RatFunc { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the denominator is a constant.
    pub fn as_poly(&self) -> Option<Poly> {
        self.den.as_constant().map(|c| self.num.scale(&c.recip()))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let n = num.num_vars();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(n) };
        }
        if let Some(q) = num.div_exact(&den) {
            return RatFunc { num: q, den: Poly::one(n) };
        }
        let (mut num, mut den) = (num, den);
        if let Some(q) = den.div_exact(&num) {
            num = Poly::one(n);
            den = q;
        }
        let gm_num = num.monomial_content();
        let gm_den = den.monomial_content();
        let common: Vec<u32> =
            gm_num.exps().iter().zip(gm_den.exps()).map(|(a, b)| (*a).min(*b)).collect();
        if common.iter().any(|&e| e > 0) {
            let m = Poly::from_monomial(super::poly::Monomial::new(common), Rational::one());
            num = num.div_exact(&m).expect("monomial content divides");
            den = den.div_exact(&m).expect("monomial content divides");
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            num = num.scale(&lc.recip());
            den = den.scale(&lc.recip());
        }
        RatFunc { num, den }
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn recip(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.num_vars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn partial(&self, var: usize) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc { num: self.num.partial(var), den: self.den.clone() };
        }
        let n = &(&self.num.partial(var) * &self.den) - &(&self.num * &self.den.partial(var));
        Self::normalized(n, &self.den * &self.den)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let n = self.num.display_with(names);
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return n;
        }
        format!("({})/({})", n, self.den.display_with(names))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Poly::default_names(self.num_vars())))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(q) = rhs.den.div_exact(&self.den) {
            return RatFunc::normalized(&(&self.num * &q) + &rhs.num, rhs.den.clone());
        }
        if let Some(q) = self.den.div_exact(&rhs.den) {
            return RatFunc::normalized(&self.num + &(&rhs.num * &q), self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.num_vars());
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        let inv = rhs.recip().expect("division by the zero rational function");
        self * &inv
    }
}

impl Coeff for RatFunc {
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl Differentiable for RatFunc {
    fn partial(&self, var: usize) -> Self {
        RatFunc::partial(self, var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn cancels_exact_divisors() {
        let r = RatFunc::new(&x(0) * &x(1), x(0).scale(&rat(2))).unwrap();
        assert_eq!(r.den(), &Poly::one(2));
        assert_eq!(r.num(), &x(1).scale(&crate::ring::ratio(1, 2)));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = RatFunc::new(&x(0) + &x(1), &x(0) - &x(1)).unwrap();
        let u = &x(0) + &Poly::one(2);
        let b = RatFunc::new(&(&x(0) + &x(1)) * &u, &(&x(0) - &x(1)) * &u).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(x(0), Poly::zero(2)).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(Poly::one(2), x(0)).unwrap();
        let b = RatFunc::new(Poly::one(2), x(1)).unwrap();
        let s = &a + &b;
        assert_eq!(s, RatFunc::new(&x(0) + &x(1), &x(0) * &x(1)).unwrap());
        assert_eq!(&(&s * &a) / &a, s);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn quotient_rule() {
        let a = RatFunc::new(x(1), x(0)).unwrap();
        let expect = RatFunc::new(-&x(1), &x(0) * &x(0)).unwrap();
        assert_eq!(a.partial(0), expect);
    }

    #[test]
    fn evaluation_off_the_pole() {
        let a = RatFunc::new(x(1), &x(0) - &Poly::one(2)).unwrap();
        assert_eq!(a.eval(&[rat(3), rat(4)]), Some(rat(2)));
        assert_eq!(a.eval(&[rat(1), rat(4)]), None);
    }
}
