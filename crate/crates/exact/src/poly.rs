use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::var::{Var, NVARS};

/// Exponent vector, ordered graded-lexicographically with `k` the largest variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn deg(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }

    fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ. Terms are sorted by decreasing monomial and
/// carry nonzero coefficients, so derived equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly {
            terms: vec![(Monomial::var(v), Rational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn var_mask(&self) -> u16 {
        let mut mask = 0u16;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.var_mask();
        Var::ALL
            .iter()
            .copied()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.deg(v)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), a * b));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.leading().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let m = dm.quotient_of(&rm);
            let c = rc / dc;
            r = r.sub(&d.mul_monomial(&m, &c));
            q.push((m, c));
        }
        Some(Poly::from_terms(q))
    }

    /// Coefficients as a polynomial in `v`; entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        if self.is_zero() {
            return vec![Poly::zero()];
        }
        for (m, c) in &self.terms {
            buckets[m.deg(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    fn leading_coeff_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.deg(v) == d)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        )
    }

    /// Substitutes a rational value for `v`.
    pub fn substitute(&self, v: Var, value: &Rational) -> Poly {
        let d = self.degree_in(v) as usize;
        if d == 0 {
            return self.clone();
        }
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Rational::one());
        for i in 0..d {
            powers.push(&powers[i] * value);
        }
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exp(v, 0), c * &powers[m.deg(v) as usize]))
                .collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// `(l, g)` where `l` is the lcm of the coefficient denominators and `g`
    /// the gcd of the coefficient numerators.
    pub(crate) fn integer_content(&self) -> (BigInt, BigInt) {
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        (l, g)
    }

    pub(crate) fn leading_is_negative(&self) -> bool {
        self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `v`.
    fn prem(&self, b: &Poly, v: Var) -> Poly {
        let db = b.degree_in(v);
        let lc = b.leading_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.leading_coeff_in(v);
            let shift = Monomial::one().with_exp(v, dr - db);
            r = lc
                .mul(&r)
                .sub(&lr.mul(b).mul_monomial(&shift, &Rational::one()));
        }
        r
    }

    fn content_in(&self, v: Var) -> Poly {
        let coeffs: Vec<Poly> = self
            .coeffs_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        if coeffs.iter().any(Poly::is_constant) {
            return Poly::one();
        }
        let mut g = coeffs[0].monic();
        for c in &coeffs[1..] {
            if g.is_one() {
                break;
            }
            g = Poly::gcd(&g, c);
        }
        g
    }

    /// Primitive part in `v`, also stripped of its rational content so that
    /// coefficients stay small along remainder sequences.
    fn primitive_in(&self, v: Var) -> Poly {
        let c = self.content_in(v);
        let p = if c.is_one() {
            self.clone()
        } else {
            self.exact_div(&c).expect("content divides")
        };
        p.integer_primitive()
    }

    /// Scales to integer coefficients with no common factor.
    pub fn integer_primitive(&self) -> Poly {
        let (l, _) = self.integer_content();
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        if g.is_zero() {
            return Poly::zero();
        }
        self.scale(&Rational::new(l, g.abs()))
    }

    /// Monic greatest common divisor, by recursive primitive remainder sequences.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.monic();
        }
        let (ma, mb) = (a.var_mask(), b.var_mask());
        for v in Var::ALL {
            let bit = 1 << v.index();
            if ma & bit != 0 && mb & bit == 0 {
                return Poly::gcd(&a.content_in(v), b);
            }
            if mb & bit != 0 && ma & bit == 0 {
                return Poly::gcd(a, &b.content_in(v));
            }
        }
        let v = Var::ALL
            .iter()
            .copied()
            .filter(|v| ma & (1 << v.index()) != 0)
            .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
            .expect("nonconstant");
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = Poly::gcd(&ca, &cb);
        let mut p = a.exact_div(&ca).expect("content divides");
        let mut q = b.exact_div(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            if q.degree_in(v) == 0 {
                return c.monic();
            }
            let r = p.prem(&q, v);
            if r.is_zero() {
                break;
            }
            p = q;
            q = r.primitive_in(v);
        }
        q.primitive_in(v).mul(&c).monic()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(f, &a)?;
                continue;
            }
            if !a.is_one() {
                write_rational(f, &a)?;
                f.write_str("*")?;
            }
            let mut first = true;
            for v in Var::ALL {
                let e = m.deg(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v.name())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
