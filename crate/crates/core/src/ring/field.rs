use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;
use super::Coeff;

/// A nonconstant proper factor of the modulus, discovered while inverting.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDivisor(pub UniPoly);

/// Exact field arithmetic. Inversion of a nonzero element fails only in a
/// quotient ring whose modulus is reducible; the error carries a factor.
pub trait ExactField: Coeff {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn inverse(&self) -> Result<Self, ZeroDivisor>;
}

impl ExactField for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn inverse(&self) -> Result<Self, ZeroDivisor> {
        assert!(!Zero::is_zero(self), "inverse of zero");
        Ok(self.recip())
    }
}

/// Element of `Q[t]/(f)` for a squarefree monic `f`.
#[derive(Clone, Debug)]
pub struct Residue {
    value: UniPoly,
    modulus: Arc<UniPoly>,
}

impl Residue {
    pub fn new(value: UniPoly, modulus: &Arc<UniPoly>) -> Self {
        Residue { value: value.rem(modulus), modulus: Arc::clone(modulus) }
    }

    pub fn from_rational(c: Rational, modulus: &Arc<UniPoly>) -> Self {
        Self::new(UniPoly::constant(c), modulus)
    }

    /// The class of `t`, a root of the modulus.
    pub fn root(modulus: &Arc<UniPoly>) -> Self {
        Self::new(UniPoly::t(), modulus)
    }

    /// Evaluates a polynomial in `t` at the class of `t`.
    pub fn of_poly(p: &UniPoly, modulus: &Arc<UniPoly>) -> Self {
        Self::new(p.clone(), modulus)
    }

    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    fn wrap(&self, v: UniPoly) -> Self {
        Residue::new(v, &self.modulus)
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.value, self.modulus)
    }
}

impl Coeff for Residue {
    fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Residue { value: &self.value + &rhs.value, modulus: Arc::clone(&self.modulus) }
    }
    fn minus(&self, rhs: &Self) -> Self {
        Residue { value: &self.value - &rhs.value, modulus: Arc::clone(&self.modulus) }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.wrap(&self.value * &rhs.value)
    }
    fn negated(&self) -> Self {
        Residue { value: -&self.value, modulus: Arc::clone(&self.modulus) }
    }
    fn scaled(&self, c: &Rational) -> Self {
        Residue { value: self.value.scale(c), modulus: Arc::clone(&self.modulus) }
    }
}

impl ExactField for Residue {
    fn zero_like(&self) -> Self {
        self.wrap(UniPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.wrap(UniPoly::one())
    }
    fn inverse(&self) -> Result<Self, ZeroDivisor> {
        assert!(!self.value.is_zero(), "inverse of zero");
        let (g, s, _) = self.value.ext_gcd(&self.modulus).expect("nonzero");
        if g.degree().unwrap_or(0) > 0 {
            return Err(ZeroDivisor(g));
        }
        Ok(self.wrap(s))
    }
}

/// Runs `compute` in `Q[t]/(g)` for squarefree factors `g` of `f`, splitting
/// `g` whenever a zero divisor shows up. The returned factors multiply to the
/// squarefree part of `f`, and each result is valid at every root of its
/// factor.
pub fn split_evaluate<T>(
    f: &UniPoly,
    mut compute: impl FnMut(&Arc<UniPoly>) -> Result<T, ZeroDivisor>,
) -> Vec<(UniPoly, T)> {
    let mut out = Vec::new();
    let sf = f.squarefree_part();
    if sf.is_constant() {
        return out;
    }
    let mut stack = vec![sf];
    while let Some(g) = stack.pop() {
        let m = Arc::new(g.clone());
        match compute(&m) {
            Ok(v) => out.push((g, v)),
            Err(ZeroDivisor(h)) => {
                let h = h.gcd(&g).expect("nonzero");
                let rest = g.div_exact(&h).expect("factor divides").monic();
                assert!(!h.is_constant() && !rest.is_constant(), "improper split");
                stack.push(rest);
                stack.push(h);
            }
        }
    }
    out
}

/// Element of the field `Q(t)`, reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct UniRatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl UniRatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return UniRatFunc { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den).expect("nonzero");
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lc = den.leading().unwrap().recip();
        UniRatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }
}

impl fmt::Display for UniRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Coeff for UniRatFunc {
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        UniRatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
    fn minus(&self, rhs: &Self) -> Self {
        UniRatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
    fn times(&self, rhs: &Self) -> Self {
        UniRatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn negated(&self) -> Self {
        UniRatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn scaled(&self, c: &Rational) -> Self {
        UniRatFunc::new(self.num.scale(c), self.den.clone())
    }
}

impl ExactField for UniRatFunc {
    fn zero_like(&self) -> Self {
        UniRatFunc::from_poly(UniPoly::zero())
    }
    fn one_like(&self) -> Self {
        UniRatFunc::from_poly(UniPoly::one())
    }
    fn inverse(&self) -> Result<Self, ZeroDivisor> {
        assert!(!self.num.is_zero(), "inverse of zero");
        Ok(UniRatFunc::new(self.den.clone(), self.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn inverse_in_a_field_extension() {
        let m = Arc::new(up(&[1, 1, 1]));
        let w = Residue::root(&m);
        let inv = w.inverse().unwrap();
        assert_eq!(w.times(&inv), w.one_like());
        // w^2 + w + 1 = 0
        assert!(w.times(&w).plus(&w).plus(&w.one_like()).vanishes());
    }

    #[test]
    fn zero_divisor_exposes_factor() {
        let m = Arc::new(&up(&[-1, 1]) * &up(&[1, 1]));
        let x = Residue::new(up(&[-1, 1]), &m);
        assert_eq!(x.inverse(), Err(ZeroDivisor(up(&[-1, 1]))));
    }

    #[test]
    fn splitting_reaches_each_factor() {
        // f = (t - 1)(t^2 + 1); compute asks whether t - 1 vanishes.
        let f = &up(&[-1, 1]) * &up(&[1, 0, 1]);
        let parts = split_evaluate(&f, |m| {
            let x = Residue::new(up(&[-1, 1]), m);
            if x.vanishes() {
                return Ok(true);
            }
            x.inverse().map(|_| false)
        });
        let mut seen: Vec<(usize, bool)> =
            parts.iter().map(|(g, v)| (g.degree().unwrap(), *v)).collect();
        seen.sort();
        assert_eq!(seen, vec![(1, true), (2, false)]);
    }

    #[test]
    fn rational_function_field() {
        let a = UniRatFunc::new(up(&[-1, 0, 1]), up(&[-1, 1]));
        assert_eq!(a, UniRatFunc::from_poly(up(&[1, 1])));
        let b = a.inverse().unwrap();
        assert_eq!(a.times(&b), a.one_like());
    }
}
