//! Exact arithmetic over GF(2^k): field elements, sparse multivariate
//! polynomials, reduced rational functions, places of GF(2^k)(t), univariate
//! factorization and lexicographic Gröbner bases.

mod factor;
mod field;
mod gcd;
pub mod groebner;
mod parse;
mod place;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use factor::{factor_univariate, is_irreducible, Factorization};
pub use field::{field_arith, is_irreducible_gf2, FieldElement, FieldOp, FiniteField, MAX_DEGREE};
pub use gcd::{gcd, lcm};
pub use parse::{parse_poly, parse_ratfunc, ParseError};
pub use place::{valuation, Place};
pub use poly::{Monomial, Poly, Var};
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("extension degree {0} is not supported (1..=8)")]
    UnsupportedDegree(u8),
    #[error("modulus {0:#b} is not irreducible of the requested degree")]
    ReducibleModulus(u16),
    #[error("operands live in different fields: {0} and {1}")]
    FieldMismatch(FiniteField, FiniteField),
    #[error("division by zero")]
    DivisionByZero,
    #[error("wrong number of operands")]
    Arity,
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("valuation of the zero function is undefined")]
    ZeroFunction,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("expected a polynomial in the single variable `{0}`")]
    NotUnivariate(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Shorthand for building a variable from a name known to be valid.
///
/// # Panics
/// Panics if `name` is not a valid variable name.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|e| panic!("{e}"))
}
