//! Exact exterior calculus for pairs of Poisson bivectors on coordinate space.
//!
//! Scalars are exact rationals throughout. The crate is organised bottom-up:
//!
//! * [`ring`]: rationals, sparse polynomials, rational functions, univariate
//!   polynomials, quotient rings and exact linear algebra.
//! * [`exterior`]: differential forms and multivector fields with polynomial
//!   coefficients, and the bivector / (m-2)-form correspondence.
//! * [`liealg`]: Lie algebras by structure constants, the Chevalley-Eilenberg
//!   differential, Lie-Poisson bivectors and the `A_alpha` subalgebra.
//! * [`pencil`]: pairs of bivectors, compatibility, rank and genericity.
//! * [`flatness`]: the lambda solver, the Casimir proportionality test, the
//!   three-dimensional curvature and the three-dimensional classifiers.
//! * [`constructions`]: truncated, secondary, affine and product algebras,
//!   Nijenhuis torsion and deformed brackets.
//! * [`serial`]: JSON file formats.

pub mod constructions;
pub mod error;
pub mod exterior;
pub mod flatness;
pub mod liealg;
pub mod pencil;
pub mod ring;
pub mod serial;

pub use error::{Error, Result};
