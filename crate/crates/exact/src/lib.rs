//! Exact arithmetic over ℚ and over ℚ(k, λ, Δ, w, x, t, r, r′, s, s′).
//!
//! [`Rational`] is an arbitrary-precision fraction. [`Poly`] is a sparse
//! multivariate polynomial and [`RatFunc`] a quotient of two such polynomials
//! kept in a canonical form, so structural equality is mathematical equality.

mod parse;
mod poly;
mod ratfunc;
mod rational;
mod var;

pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::{binomial, parse_rational, rat, Rational};
pub use var::{Var, NVARS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    /// A binding made a denominator vanish. At k = -3 this is the critical level.
    #[error("critical specialization: denominator {denominator} vanishes")]
    CriticalSpecialization { denominator: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ExactError>;
