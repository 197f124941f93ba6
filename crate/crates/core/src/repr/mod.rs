//! Relaxed highest-weight modules `R_{M,λ} = M ⊗ Π_{-1}(λ)`: the action of
//! `G±_0` on the top space, the cubic controlling irreducibility, conjugate
//! highest-weight vectors, spectral flow, conjugation, characters and the
//! critical-level analogue.

use std::fmt;
use std::str::FromStr;

use bpvoa_exact::{parse_rational, rat, RatFunc, Rational, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::{Character, QSeries};

mod critical;
mod symmetry;
mod topspace;

pub use critical::{classify_critical, critical_gminus0_engine, g_poly, gradable_critical};
pub use symmetry::{
    bp_spectral_flow, bp_spectral_flow_field, compose_fields, conjugation, conjugation_field,
    generator_states,
};
pub use topspace::{gminus0_components, gplus0_engine, top_weights_engine, GMinusComponents};

/// `T_0` and `W_0` eigenvalues of a Zamolodchikov highest-weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HwData {
    pub delta: RatFunc,
    pub w: RatFunc,
}

impl HwData {
    pub fn new(delta: RatFunc, w: RatFunc) -> Self {
        HwData { delta, w }
    }

    pub fn symbolic() -> Self {
        HwData::new(RatFunc::var(Var::Delta), RatFunc::var(Var::W))
    }
}

/// Highest weights in the parametrisation by `r, r', s, s'` and `t = k+3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WattsParams {
    pub r: RatFunc,
    pub rp: RatFunc,
    pub s: RatFunc,
    pub sp: RatFunc,
    pub t: RatFunc,
}

impl WattsParams {
    pub fn symbolic() -> Self {
        WattsParams {
            r: Var::R.into(),
            rp: Var::Rp.into(),
            s: Var::S.into(),
            sp: Var::Sp.into(),
            t: Var::T.into(),
        }
    }

    pub fn level(&self) -> RatFunc {
        self.t.clone() - RatFunc::from_int(3)
    }

    fn a(&self) -> RatFunc {
        self.r.clone() - self.t.clone() * self.s.clone()
    }

    fn b(&self) -> RatFunc {
        self.rp.clone() - self.t.clone() * self.sp.clone()
    }

    pub fn hw(&self) -> Result<HwData> {
        let (a, b, t) = (self.a(), self.b(), self.t.clone());
        let two = RatFunc::from_int(2);
        let one = RatFunc::one();
        let delta = (a.clone() * a.clone() + a.clone() * b.clone() + b.clone() * b.clone())
            .checked_div(&(RatFunc::from_int(3) * t.clone()))?
            - ((t.clone() - one.clone()) * (t.clone() - one)).checked_div(&t)?;
        let w = ((a.clone() - b.clone()) * (two.clone() * a.clone() + b.clone()) * (a + two * b))
            .scale(&rat(1, 27));
        Ok(HwData { delta, w })
    }

    /// The three roots of `p^{Δ,w}_k`.
    pub fn roots(&self) -> [RatFunc; 3] {
        let (a, b) = (self.a(), self.b());
        let base = self.t.clone() - RatFunc::one();
        let two = RatFunc::from_int(2);
        let third = |x: RatFunc| x.scale(&rat(1, 3));
        [
            base.clone() - third(a.clone() - b.clone()),
            base.clone() + third(two.clone() * a.clone() + b.clone()),
            base - third(a + two * b),
        ]
    }
}

/// `p_factor`: the roots `(x₁, x₂, x₃)`.
pub fn p_factor(params: &WattsParams) -> [RatFunc; 3] {
    params.roots()
}

/// `c₀ + c₁x + c₂x² + c₃x³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cubic {
    pub coeffs: [RatFunc; 4],
}

impl Cubic {
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        self.coeffs
            .iter()
            .rev()
            .fold(RatFunc::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// As a rational function in `x`.
    pub fn to_ratfunc(&self) -> RatFunc {
        self.eval(&RatFunc::var(Var::X))
    }

    /// `-(x - x₁)(x - x₂)(x - x₃)`.
    pub fn from_roots(roots: &[RatFunc; 3]) -> Cubic {
        let [a, b, c] = roots.clone();
        let e1 = a.clone() + b.clone() + c.clone();
        let e2 = a.clone() * b.clone() + a.clone() * c.clone() + b.clone() * c.clone();
        let e3 = a * b * c;
        Cubic {
            coeffs: [e3, -e2, e1, RatFunc::from_int(-1)],
        }
    }

    fn rational_coeffs(&self) -> Option<[Rational; 4]> {
        let v: Vec<Rational> = self.coeffs.iter().map(|c| c.to_rational()).collect::<Option<_>>()?;
        Some([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }

    /// Cauchy's bound `1 + max |cᵢ/c₃|` on the absolute value of every root.
    pub fn cauchy_bound(&self) -> Option<Rational> {
        let c = self.rational_coeffs()?;
        if c[3].is_zero() {
            return None;
        }
        let m = c[..3]
            .iter()
            .map(|x| (x / &c[3]).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Some(Rational::one() + m)
    }

    /// All rational roots, by the rational root theorem.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let c = self.rational_coeffs()?;
        let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
        while ints.last().is_some_and(|x| x.is_zero()) {
            ints.pop();
        }
        let mut roots = Vec::new();
        while ints.len() > 1 && ints[0].is_zero() {
            roots.push(Rational::zero());
            ints.remove(0);
        }
        if ints.len() > 1 {
            let small = |x: &BigInt| x.abs() <= BigInt::from(1_000_000_000_000i64);
            let (a0, an) = (&ints[0], &ints[ints.len() - 1]);
            if !small(a0) || !small(an) {
                return None;
            }
            for p in divisors(a0) {
                for q in divisors(an) {
                    for sign in [1, -1] {
                        let x = Rational::new(BigInt::from(sign) * &p, q.clone());
                        if !roots.contains(&x) && eval_int(&ints, &x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn eval_int(c: &[BigInt], x: &Rational) -> Rational {
    c.iter()
        .rev()
        .fold(Rational::zero(), |acc, a| acc * x + Rational::from_integer(a.clone()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// `p^{Δ,w}_k(x) = w - (k+2)(k+3)Δ + [(k+3)Δ - 2(k+2)²]x + 3(k+2)x² - x³`.
pub fn p_poly(hw: &HwData, k: &RatFunc) -> Cubic {
    let kp2 = k.clone() + RatFunc::from_int(2);
    let kp3 = k.clone() + RatFunc::from_int(3);
    Cubic {
        coeffs: [
            hw.w.clone() - kp2.clone() * kp3.clone() * hw.delta.clone(),
            kp3 * hw.delta.clone() - RatFunc::from_int(2) * kp2.clone() * kp2.clone(),
            RatFunc::from_int(3) * kp2,
            RatFunc::from_int(-1),
        ],
    }
}

/// A complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRat {
    pub fn real(re: Rational) -> Self {
        ComplexRat { re, im: Rational::zero() }
    }

    fn add_int(&self, n: i64) -> Self {
        ComplexRat {
            re: &self.re + Rational::from_integer(n.into()),
            im: self.im.clone(),
        }
    }

    fn mul(&self, o: &ComplexRat) -> ComplexRat {
        ComplexRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl fmt::Display for ComplexRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for ComplexRat {
    type Err = Error;

    /// `a`, `bi`, `a+bi` or `a-bi` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexRat::real(parse_rational(&s)?));
        };
        // split at the last sign that is not in leading position or after '/'
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => parse_rational(x.strip_prefix('+').unwrap_or(x))?,
        };
        Ok(ComplexRat { re, im })
    }
}

fn eval_complex(c: &[Rational; 4], x: &ComplexRat) -> ComplexRat {
    c.iter().rev().fold(ComplexRat::real(Rational::zero()), |acc, a| {
        let m = acc.mul(x);
        ComplexRat {
            re: m.re + a,
            im: m.im,
        }
    })
}

/// The data of `R_{M,λ}` with `M` the irreducible Zamolodchikov module of
/// highest weight `(Δ, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxedSpec {
    pub k: RatFunc,
    pub hw: HwData,
    pub lambda: RatFunc,
}

impl RelaxedSpec {
    pub fn new(k: RatFunc, hw: HwData, lambda: RatFunc) -> Result<Self> {
        if k == RatFunc::from_int(-3) {
            return Err(Error::CriticalLevel);
        }
        Ok(RelaxedSpec { k, hw, lambda })
    }

    pub fn rational(k: Rational, delta: Rational, w: Rational, lambda: Rational) -> Result<Self> {
        RelaxedSpec::new(
            k.into(),
            HwData::new(delta.into(), w.into()),
            lambda.into(),
        )
    }

    pub fn p(&self) -> Cubic {
        p_poly(&self.hw, &self.k)
    }
}

/// Coefficient of `u ⊗ e^{-j+(λ+n+1)c}` in `G+_0 (u ⊗ e^{-j+(λ+n)c})`.
pub fn gplus0(_spec: &RelaxedSpec, _n: i64) -> RatFunc {
    RatFunc::one()
}

/// Coefficient of `u ⊗ e^{-j+(λ+n-1)c}` in `G-_0 (u ⊗ e^{-j+(λ+n)c})`.
pub fn gminus0(spec: &RelaxedSpec, n: i64) -> RatFunc {
    spec.p().eval(&(spec.lambda.clone() + RatFunc::from_int(n)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Irreducible,
    Reducible,
    GenericallyIrreducible,
    /// The criterion is sufficient only and does not apply.
    Undetermined,
}

/// Result of classifying `R_{M,λ}` (or its critical analogue).
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub status: Status,
    /// Rational roots of the cubic.
    pub roots: Vec<String>,
    /// Roots `μ ∈ λ + ℤ`; the conjugate highest-weight vectors are `u ⊗ e^{-j+μc}`.
    pub roots_in_coset: Vec<String>,
    pub maximal_mu: Option<String>,
    /// `(J_0, L_0)` eigenvalues on `u ⊗ e^{-j+μc}` for the maximal `μ`.
    pub top_weights: Option<(String, String)>,
    pub cauchy_bound: Option<String>,
    /// Integer window `n_min..=n_max` searched for roots `λ + n`.
    pub window: Option<(i64, i64)>,
    /// Relaxed modules of this kind never have highest-weight vectors.
    pub has_highest_weight_vectors: bool,
    #[serde(skip)]
    pub coset_roots: Vec<ComplexRat>,
}

fn ceil(x: &Rational) -> i64 {
    x.ceil().to_integer().try_into().expect("window fits in i64")
}

fn floor(x: &Rational) -> i64 {
    x.floor().to_integer().try_into().expect("window fits in i64")
}

/// Searches `λ + n`, `|Re(λ + n)| ≤ B`, for roots of a cubic with rational coefficients.
pub(crate) fn coset_roots(p: &Cubic, lambda: &ComplexRat) -> Result<(Vec<ComplexRat>, Rational, (i64, i64))> {
    let c = p
        .rational_coeffs()
        .ok_or_else(|| Error::Invalid("the cubic must have rational coefficients".into()))?;
    let bound = p
        .cauchy_bound()
        .ok_or_else(|| Error::Invalid("the cubic must have nonzero leading coefficient".into()))?;
    let lo = ceil(&(-&bound - &lambda.re));
    let hi = floor(&(&bound - &lambda.re));
    let mut roots = Vec::new();
    for n in lo..=hi {
        let x = lambda.add_int(n);
        let v = eval_complex(&c, &x);
        if v.re.is_zero() && v.im.is_zero() {
            roots.push(x);
        }
    }
    Ok((roots, bound, (lo, hi)))
}

pub(crate) fn classify_cubic(p: &Cubic, lambda: &ComplexRat, reducible: Status) -> Result<Classification> {
    let (coset, bound, window) = coset_roots(p, lambda)?;
    let maximal = coset
        .iter()
        .max_by(|a, b| a.re.cmp(&b.re))
        .cloned();
    let roots = p.rational_roots().unwrap_or_default();
    Ok(Classification {
        status: if coset.is_empty() { Status::Irreducible } else { reducible },
        roots: roots.iter().map(|r| r.to_string()).collect(),
        roots_in_coset: coset.iter().map(|r| r.to_string()).collect(),
        maximal_mu: maximal.as_ref().map(|m| m.to_string()),
        top_weights: None,
        cauchy_bound: Some(bound.to_string()),
        window: Some(window),
        has_highest_weight_vectors: false,
        coset_roots: coset,
    })
}

/// Irreducibility of `R_{M,λ}` and its conjugate highest-weight vectors. A
/// non-numeric `λ` is generic and the module is irreducible.
pub fn classify(spec: &RelaxedSpec, lambda_im: Option<&Rational>) -> Result<Classification> {
    let Some(re) = spec.lambda.to_rational() else {
        return Ok(Classification {
            status: Status::GenericallyIrreducible,
            roots: spec.p().rational_roots().unwrap_or_default().iter().map(|r| r.to_string()).collect(),
            roots_in_coset: Vec::new(),
            maximal_mu: None,
            top_weights: None,
            cauchy_bound: spec.p().cauchy_bound().map(|b| b.to_string()),
            window: None,
            has_highest_weight_vectors: false,
            coset_roots: Vec::new(),
        });
    };
    let lambda = ComplexRat {
        re,
        im: lambda_im.cloned().unwrap_or_else(Rational::zero),
    };
    let mut out = classify_cubic(&spec.p(), &lambda, Status::Reducible)?;
    if let Some(mu) = maximal_chw(&out) {
        if mu.im.is_zero() {
            let (j0, l0) = top_weights(&mu.re.clone().into(), &spec.hw.delta, &spec.k);
            out.top_weights = Some((j0.to_string(), l0.to_string()));
        }
    }
    Ok(out)
}

/// The root in `λ + ℤ` of maximal real part.
pub fn maximal_chw(c: &Classification) -> Option<ComplexRat> {
    c.coset_roots.iter().max_by(|a, b| a.re.cmp(&b.re)).cloned()
}

/// `(J_0, L_0)` eigenvalues `(μ - (2k+3)/3, Δ + (2k+3)/3)` on `u ⊗ e^{-j+μc}`.
pub fn top_weights(mu: &RatFunc, delta: &RatFunc, k: &RatFunc) -> (RatFunc, RatFunc) {
    let kappa = (RatFunc::from_int(2) * k.clone() + RatFunc::from_int(3)).scale(&rat(1, 3));
    (mu.clone() - kappa.clone(), delta.clone() + kappa)
}

/// `z^{λ - (2k+3)/3} ch[M](q) η(q)^{-2} δ(z)`.
pub fn character_relaxed(spec: &RelaxedSpec, ch_m: &QSeries, order: usize) -> Character {
    let kappa = (RatFunc::from_int(2) * spec.k.clone() + RatFunc::from_int(3)).scale(&rat(1, 3));
    let eta = QSeries::eta_inverse_squared(order);
    Character {
        y_exp: RatFunc::zero(),
        z_exp: spec.lambda.clone() - kappa,
        delta: true,
        series: (ch_m * &eta).truncate(order.min(ch_m.order())),
    }
}

#[cfg(test)]
mod tests;
