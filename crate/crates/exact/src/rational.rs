use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a`, `-a`, `a/b` with optional surrounding whitespace.
/// The Unicode minus sign is accepted as well.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim().replace('−', "-");
    let bad = || ExactError::Parse(format!("malformed rational `{s}`"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Generalised binomial C(m, j) = m(m-1)...(m-j+1)/j!, valid for negative m.
pub fn binomial(m: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(m - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}
