use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::rational::Rational;
use crate::var::Var;
use crate::{ExactError, Result};

/// A rational function `num/den` in canonical form: `gcd(num, den) = 1`,
/// all coefficients integral with no common integer factor, and the leading
/// coefficient of `den` positive. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::canonical_const_den(Poly::constant(c), Rational::one())
    }

    pub fn var(v: Var) -> Self {
        RatFunc {
            num: Poly::var(v),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::canonical_const_den(p, Rational::one())
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc::canonicalize(num, den))
    }

    fn canonicalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(d) = den.constant_value() {
            return RatFunc::canonical_const_den(num, d);
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        RatFunc::integer_normalize(num, den)
    }

    fn canonical_const_den(num: Poly, d: Rational) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::integer_normalize(num, Poly::constant(d))
    }

    /// Scales a coprime pair to integral, jointly primitive form with positive
    /// leading denominator coefficient.
    fn integer_normalize(num: Poly, den: Poly) -> Self {
        let (ln, _) = num.integer_content();
        let (ld, _) = den.integer_content();
        let l = num_integer::Integer::lcm(&ln, &ld);
        let mut g = BigInt::zero();
        for (_, c) in num.terms().iter().chain(den.terms()) {
            let scaled = c.numer() * (&l / c.denom());
            g = num_integer::Integer::gcd(&g, &scaled);
        }
        let mut s = Rational::new(l, g);
        if den.leading_is_negative() {
            s = -s;
        }
        if s.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    /// Integer value, when the function is a constant integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.num.var_mask() | self.den.var_mask();
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc::integer_normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::integer_normalize(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFunc::integer_normalize(
            base.num.pow(e.unsigned_abs()),
            base.den.pow(e.unsigned_abs()),
        ))
    }

    /// Binds indeterminates to rational values.
    pub fn specialize(&self, bindings: &[(Var, Rational)]) -> Result<RatFunc> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (v, value) in bindings {
            num = num.substitute(*v, value);
            den = den.substitute(*v, value);
        }
        if den.is_zero() {
            return Err(ExactError::CriticalSpecialization {
                denominator: self.den.to_string(),
            });
        }
        Ok(RatFunc::canonicalize(num, den))
    }

    pub fn eval(&self, v: Var, value: &Rational) -> Result<RatFunc> {
        self.specialize(&[(v, value.clone())])
    }

    /// Substitutes a rational function for `v`.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<RatFunc> {
        let horner = |p: &Poly| {
            let mut acc = RatFunc::zero();
            for c in p.coeffs_in(v).iter().rev() {
                acc = &(&acc * value) + &RatFunc::from_poly(c.clone());
            }
            acc
        };
        let num = horner(&self.num);
        let den = horner(&self.den);
        if den.is_zero() {
            return Err(ExactError::CriticalSpecialization {
                denominator: self.den.to_string(),
            });
        }
        num.checked_div(&den)
    }

    fn add_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.den.constant_value(), other.den.constant_value()) {
            let num = self.num.scale(&b).add(&other.num.scale(&a));
            return RatFunc::canonical_const_den(num, a * b);
        }
        if self.den == other.den {
            return RatFunc::canonicalize(self.num.add(&other.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &other.den);
        let ad = self.den.exact_div(&g).expect("gcd divides");
        let bd = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&bd).add(&other.num.mul(&ad));
        RatFunc::canonicalize(num, self.den.mul(&bd))
    }

    fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if let (Some(a), Some(b)) = (self.den.constant_value(), other.den.constant_value()) {
            return RatFunc::canonical_const_den(self.num.mul(&other.num), a * b);
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&other.den, &g1));
        RatFunc::integer_normalize(num, den)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::from_rational(c)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(rhs)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_ref(&-rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = self.mul_ref(rhs);
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.is_constant() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_ratfunc(s)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}
