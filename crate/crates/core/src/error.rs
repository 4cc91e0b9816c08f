//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot mix forms and multivectors: {0}")]
    Kind(String),
    #[error("outside the domain of the operation: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("singular matrix")]
    Singular,
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("nonzero Nijenhuis torsion at (e{}, e{})", .i + 1, .j + 1)]
    Torsion { i: usize, j: usize, value: Vec<crate::ring::Rational> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
