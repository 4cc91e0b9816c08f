use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, Rational};
use super::Coeff;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `t`, coefficients stored low degree first
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            q[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        let lc = r0.leading().unwrap().recip();
        Ok((r0.scale(&lc), s0.scale(&lc), u0.scale(&lc)))
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return Self::one();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero input");
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Rational roots, each listed once, in increasing order. Candidates come
    /// from the rational root theorem; integer coefficients beyond 10^12 in
    /// the constant or leading position are skipped, so the list may then be
    /// incomplete.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let f = self.squarefree_part();
        if f.is_constant() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut ints = f.integer_coeffs();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            let k = ints.iter().position(|c| !c.is_zero()).unwrap();
            ints.drain(..k);
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            if let (Some(p), Some(q)) = (small_divisors(&a0), small_divisors(&an)) {
                for p in &p {
                    for q in &q {
                        for sgn in [1i64, -1] {
                            let r = Rational::new(BigInt::from(sgn) * p, q.clone());
                            if !roots.contains(&r) && f.eval(&r).is_zero() {
                                roots.push(r);
                            }
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Coefficients scaled to coprime integers.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let pow = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if pow.is_empty() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&pow);
            } else {
                s.push_str(&format!("{}*{}", format_rational(&a), pow));
            }
        }
        s
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v > 0 && v <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Coeff for UniPoly {
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn gcd_with_common_root() {
        assert_eq!(up(&[-1, 0, 1]).gcd(&up(&[-1, 1])).unwrap(), up(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime() {
        assert_eq!(up(&[1, 1, 1]).gcd(&up(&[-1, 1])).unwrap(), UniPoly::one());
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), Err(Error::UndefinedGcd));
        assert_eq!(UniPoly::zero().gcd(&up(&[0, 2])).unwrap(), UniPoly::t());
    }

    #[test]
    fn extended_gcd_identity() {
        let f = &up(&[1, 1]) * &up(&[2, 0, 1]);
        let g = &up(&[1, 1]) * &up(&[-3, 1]);
        let (d, s, u) = f.ext_gcd(&g).unwrap();
        assert_eq!(d, up(&[1, 1]));
        assert_eq!(&(&s * &f) + &(&u * &g), d);
    }

    #[test]
    fn division() {
        let (q, r) = up(&[1, 0, 0, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(q, up(&[1, -1, 1]));
        assert!(r.is_zero());
        let (q, r) = up(&[1, 0, 1]).div_rem(&up(&[0, 2]));
        assert_eq!(q, UniPoly::from_coeffs(vec![rat(0), ratio(1, 2)]));
        assert_eq!(r, UniPoly::one());
    }

    #[test]
    fn squarefree_and_roots() {
        // (t - 1)^2 (2t + 1) t (t^2 + t + 1)
        let f = &(&(&up(&[-1, 1]).pow(2) * &up(&[1, 2])) * &UniPoly::t()) * &up(&[1, 1, 1]);
        let sf = f.squarefree_part();
        assert_eq!(sf.degree(), Some(5));
        assert_eq!(f.rational_roots(), vec![ratio(-1, 2), rat(0), rat(1)]);
        assert!(up(&[1, 1, 1]).rational_roots().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(up(&[1, -3, 0, 2]).to_string(), "2*t^3 - 3*t + 1");
        assert_eq!(up(&[0, -1]).to_string(), "-t");
    }
}
