//! Exact multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;

use thiserror::Error;

pub use monomial::{Monomial, Var};
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::Polynomial;

/// Arbitrary precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable `{0}` has no value at the evaluation point")]
    MissingVariable(String),
    #[error("`{0}` is not the square of a polynomial")]
    NotAPerfectSquare(String),
    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse `{input}` at offset {offset}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
