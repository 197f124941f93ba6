//! Truncated q-series `q^offset Σ_{n≤N} a_n q^n` with exact coefficients.

use std::ops::{Add, Mul};

use bpvoa_exact::{parse_rational, rat, RatFunc, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    offset: Rational,
    coeffs: Vec<RatFunc>,
}

impl QSeries {
    /// Coefficients `a_0..=a_N`; the order is `coeffs.len() - 1`.
    pub fn new(offset: Rational, coeffs: Vec<RatFunc>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs at least one coefficient");
        QSeries { offset, coeffs }
    }

    /// `q^offset (1 + O(q^{N+1}))`.
    pub fn monomial(offset: Rational, order: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); order + 1];
        coeffs[0] = RatFunc::one();
        QSeries::new(offset, coeffs)
    }

    pub fn one(order: usize) -> Self {
        QSeries::monomial(Rational::zero(), order)
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatFunc {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        QSeries::new(self.offset.clone(), coeffs)
    }

    pub fn scale(&self, c: &RatFunc) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Termwise sum. The offsets must differ by an integer; the result is
    /// valid to the smaller absolute order.
    pub fn try_add(&self, other: &QSeries) -> Option<QSeries> {
        let shift = &other.offset - &self.offset;
        if !shift.is_integer() {
            return None;
        }
        let (lo, hi, d) = if shift >= Rational::zero() {
            (self, other, shift.to_integer())
        } else {
            (other, self, -shift.to_integer())
        };
        let d: usize = d.try_into().ok()?;
        let top = lo.order().min(hi.order() + d);
        let mut coeffs: Vec<RatFunc> = lo.coeffs[..=top].to_vec();
        for (i, a) in hi.coeffs.iter().enumerate() {
            if i + d > top {
                break;
            }
            coeffs[i + d] += a;
        }
        Some(QSeries::new(lo.offset.clone(), coeffs))
    }

    /// `Π_{n≥1} (1 - q^n)^{-e}` to order `N`, with no offset.
    fn euler_power(e: i64, order: usize) -> QSeries {
        // p_e(n) = (1/n) Σ_{m=1}^n e σ(m) p_e(n-m)
        let sigma = |m: usize| (1..=m).filter(|d| m.is_multiple_of(*d)).sum::<usize>() as i64;
        let mut c: Vec<Rational> = vec![Rational::one()];
        for n in 1..=order {
            let mut s = Rational::zero();
            for m in 1..=n {
                s += Rational::from_integer((e * sigma(m)).into()) * &c[n - m];
            }
            c.push(s / Rational::from_integer((n as i64).into()));
        }
        QSeries::new(Rational::zero(), c.into_iter().map(RatFunc::from_rational).collect())
    }

    /// `η(q)^{-2} = q^{-1/12} Σ p₂(n) q^n`.
    pub fn eta_inverse_squared(order: usize) -> QSeries {
        let mut s = QSeries::euler_power(2, order);
        s.offset = rat(-1, 12);
        s
    }

    /// `η(q)^e` for any integer `e`.
    pub fn eta_power(e: i64, order: usize) -> QSeries {
        let mut s = QSeries::euler_power(-e, order);
        s.offset = rat(e, 24);
        s
    }
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> usize {
    Partition::all_of(n).len()
}

impl Add for &QSeries {
    type Output = QSeries;

    /// Panics if the offsets differ by a non-integer.
    fn add(self, other: &QSeries) -> QSeries {
        self.try_add(other).expect("q-series offsets differ by a non-integer")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![RatFunc::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += &(a.clone() * b.clone());
            }
        }
        QSeries::new(&self.offset + &other.offset, coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    offset: String,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSeriesJson {
            offset: self.offset.to_string(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = QSeriesJson::deserialize(d)?;
        let offset = parse_rational(&raw.offset).map_err(D::Error::custom)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<RatFunc>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(D::Error::custom("empty coefficient list"));
        }
        Ok(QSeries::new(offset, coeffs))
    }
}

/// `y^{y_exp} z^{z_exp} F(q)`, times `δ(z) = Σ_n z^n` when `delta` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub y_exp: RatFunc,
    pub z_exp: RatFunc,
    pub delta: bool,
    pub series: QSeries,
}

impl Character {
    /// Sum of two characters with the same prefactor.
    pub fn try_add(&self, other: &Character) -> Option<Character> {
        if self.y_exp != other.y_exp || self.z_exp != other.z_exp || self.delta != other.delta {
            return None;
        }
        Some(Character {
            series: self.series.try_add(&other.series)?,
            ..self.clone()
        })
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            y_exp: String,
            z_exp: String,
            delta: bool,
            q_offset: String,
            coeffs: Vec<String>,
        }
        Out {
            y_exp: self.y_exp.to_string(),
            z_exp: self.z_exp.to_string(),
            delta: self.delta,
            q_offset: self.series.offset.to_string(),
            coeffs: self.series.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}
