use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// An element of ½ℤ, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_twice(t: i64) -> Self {
        HalfInt(t)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn to_rational(self) -> bpvoa_exact::Rational {
        bpvoa_exact::rat(self.0, 2)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let r = bpvoa_exact::parse_rational(s)?;
        let t = r * bpvoa_exact::rat(2, 1);
        if !t.is_integer() {
            return Err(Error::Invalid(format!("`{s}` is not in ½ℤ")));
        }
        let v: i64 = t
            .to_integer()
            .try_into()
            .map_err(|_| Error::Invalid(format!("`{s}` out of range")))?;
        Ok(HalfInt(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integers() {
        let h: HalfInt = "3/2".parse().unwrap();
        assert_eq!(h.to_string(), "3/2");
        assert_eq!((h + h).to_int(), Some(3));
        assert_eq!(HalfInt::from_twice(-3).floor(), -2);
        assert!("1/3".parse::<HalfInt>().is_err());
    }
}
