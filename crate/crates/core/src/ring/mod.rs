//! Exact arithmetic substrate.
//!
//! [`Coeff`] is the minimal ring interface the exterior algebra needs;
//! [`ExactField`] adds inversion, which may fail with a [`ZeroDivisor`] in a
//! quotient ring `Q[t]/(f)` with reducible `f`.

mod bareiss;
mod field;
mod linalg;
mod poly;
mod ratfunc;
mod rational;
mod unipoly;

pub use bareiss::{fraction_free_kernel, fraction_free_solve, SolveOutcome};
pub use field::{split_evaluate, ExactField, Residue, UniRatFunc, ZeroDivisor};
pub use linalg::{det, inverse, kernel_basis, mat_mul, mat_vec, rank, rref, solve, Matrix};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use unipoly::UniPoly;

use std::fmt::Debug;

/// Commutative ring with exact zero test, used as a coefficient domain.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
}

/// Coefficients that can be differentiated in a coordinate direction.
pub trait Differentiable: Coeff {
    fn partial(&self, var: usize) -> Self;
}

impl Coeff for Rational {
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
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
        self * c
    }
}
