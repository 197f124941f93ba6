//! The half-lattice vertex algebra Π: a rank-two Heisenberg algebra with an
//! isotropic lattice `ℤc`, and its modules `Π_r(λ)` generated by `e^{rj+λc}`.
//!
//! States are stored in the mode basis `j_(-μ) c_(-ν) e^{rj+μc}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use bpvoa_exact::{rat, RatFunc, Rational, Var};
use num_traits::One;
use parking_lot::RwLock;

use crate::algebra::{iterate_step, Decomposition, ModeAction, VertexAlgebra, VertexModule};
use crate::combo::Combo;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qseries::{Character, QSeries};
use crate::weight::HalfInt;

mod basis;
mod text;

pub use basis::{from_b_basis, schur, schur_scaled, to_b_basis, BKey};

/// `h = α a + β b` with `⟨a,a⟩ = 1`, `⟨b,b⟩ = -1`, `⟨a,b⟩ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisVector {
    pub alpha: RatFunc,
    pub beta: RatFunc,
}

impl HeisVector {
    pub fn new(alpha: RatFunc, beta: RatFunc) -> Self {
        HeisVector { alpha, beta }
    }

    pub fn a() -> Self {
        HeisVector::new(RatFunc::one(), RatFunc::zero())
    }

    pub fn b() -> Self {
        HeisVector::new(RatFunc::zero(), RatFunc::one())
    }

    /// `c = a - b`.
    pub fn c() -> Self {
        HeisVector::new(RatFunc::one(), -RatFunc::one())
    }

    /// `d = a + b`.
    pub fn d() -> Self {
        HeisVector::new(RatFunc::one(), RatFunc::one())
    }

    pub fn pairing(&self, other: &HeisVector) -> RatFunc {
        &self.alpha * &other.alpha - &self.beta * &other.beta
    }

    pub fn add(&self, other: &HeisVector) -> HeisVector {
        HeisVector::new(&self.alpha + &other.alpha, &self.beta + &other.beta)
    }

    pub fn scale(&self, s: &RatFunc) -> HeisVector {
        HeisVector::new(&self.alpha * s, &self.beta * s)
    }
}

/// The exponent `rj + μc` of a ground vector `e^{rj+μc}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpGround {
    pub r: HalfInt,
    pub mu: RatFunc,
}

impl ExpGround {
    pub fn new(r: HalfInt, mu: RatFunc) -> Self {
        ExpGround { r, mu }
    }

    pub fn zero() -> Self {
        ExpGround::new(HalfInt::ZERO, RatFunc::zero())
    }

    /// `e^{nc}`.
    pub fn lattice(n: i64) -> Self {
        ExpGround::new(HalfInt::ZERO, RatFunc::from_int(n))
    }

    /// `e^{-j+λc}`, the ground of `Π_{-1}(λ)`.
    pub fn relaxed(lambda: RatFunc) -> Self {
        ExpGround::new(HalfInt::from_int(-1), lambda)
    }

    pub fn shift(&self, m: i64) -> Self {
        ExpGround::new(self.r, &self.mu + &RatFunc::from_int(m))
    }

    /// `m` if this is `e^{mc}` with `m ∈ ℤ`.
    pub fn lattice_point(&self) -> Option<i64> {
        if self.r != HalfInt::ZERO {
            return None;
        }
        let n = self.mu.to_integer()?;
        i64::try_from(n).ok()
    }
}

/// `j_(-μ) c_(-ν) e^{γ}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeKey {
    pub j: Partition,
    pub c: Partition,
    pub exp: ExpGround,
}

impl LatticeKey {
    pub fn new(j: Partition, c: Partition, exp: ExpGround) -> Self {
        LatticeKey { j, c, exp }
    }

    pub fn vacuum() -> Self {
        LatticeKey::ground(ExpGround::zero())
    }

    pub fn ground(exp: ExpGround) -> Self {
        LatticeKey::new(Partition::empty(), Partition::empty(), exp)
    }

    /// Total mode depth `|μ| + |ν|`.
    pub fn depth(&self) -> i64 {
        (self.j.weight() + self.c.weight()) as i64
    }
}

pub type LatticeState = Combo<LatticeKey>;

/// Which Heisenberg basis vector a mode belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Heis {
    J,
    C,
}

/// Π at level `k` (symbolic or specialised). Only `⟨j,j⟩ = (2k+3)/3` depends on `k`.
pub struct Pi {
    k: RatFunc,
    kappa: RatFunc,
    tau: RatFunc,
    cache: RwLock<HashMap<(LatticeKey, i64, LatticeKey), LatticeState>>,
}

impl fmt::Debug for Pi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi(k = {})", self.k)
    }
}

fn rq(c: Rational) -> RatFunc {
    RatFunc::from_rational(c)
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

impl Pi {
    pub fn new(k: RatFunc) -> Arc<Pi> {
        let kappa = (int(2) * k.clone() + int(3)).scale(&rat(1, 3));
        let tau = (k.clone() + int(3)).scale(&rat(1, 3));
        Arc::new(Pi {
            k,
            kappa,
            tau,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Π with symbolic `k`.
    pub fn symbolic() -> Arc<Pi> {
        static S: OnceLock<Arc<Pi>> = OnceLock::new();
        S.get_or_init(|| Pi::new(RatFunc::var(Var::K))).clone()
    }

    pub fn at(k: &Rational) -> Arc<Pi> {
        Pi::new(rq(k.clone()))
    }

    pub fn level(&self) -> &RatFunc {
        &self.k
    }

    /// `⟨j,j⟩ = (2k+3)/3`.
    pub fn kappa(&self) -> &RatFunc {
        &self.kappa
    }

    /// `j = b + (k+3)/3 c`.
    pub fn j(&self) -> HeisVector {
        HeisVector::new(self.tau.clone(), int(1) - self.tau.clone())
    }

    /// `i = a - (k+3)/3 c`.
    pub fn i(&self) -> HeisVector {
        HeisVector::new(int(1) - self.tau.clone(), self.tau.clone())
    }

    /// Coordinates `(x, y)` with `h = x j + y c`.
    pub fn to_jc(&self, h: &HeisVector) -> (RatFunc, RatFunc) {
        let x = &h.alpha + &h.beta;
        let y = &h.alpha * &(int(1) - self.tau.clone()) - &h.beta * &self.tau;
        (x, y)
    }

    pub fn from_jc(&self, x: &RatFunc, y: &RatFunc) -> HeisVector {
        HeisVector::new(
            x * &self.tau + y.clone(),
            x * &(int(1) - self.tau.clone()) - y.clone(),
        )
    }

    /// The exponent `rj + μc` as a Heisenberg vector.
    pub fn exp_vector(&self, g: &ExpGround) -> HeisVector {
        self.from_jc(&rq(g.r.to_rational()), &g.mu)
    }

    fn pair_exp(&self, h: Heis, g: &ExpGround) -> RatFunc {
        let r = rq(g.r.to_rational());
        match h {
            Heis::J => &r * &self.kappa + g.mu.clone(),
            Heis::C => r,
        }
    }

    fn pair(&self, x: Heis, y: Heis) -> RatFunc {
        match (x, y) {
            (Heis::J, Heis::J) => self.kappa.clone(),
            (Heis::C, Heis::C) => RatFunc::zero(),
            _ => RatFunc::one(),
        }
    }

    fn basis_mode(&self, h: Heis, n: i64, v: &LatticeKey) -> LatticeState {
        if n < 0 {
            let part = (-n) as u32;
            let mut out = v.clone();
            match h {
                Heis::J => out.j = out.j.with_part(part),
                Heis::C => out.c = out.c.with_part(part),
            }
            return LatticeState::single(out);
        }
        if n == 0 {
            return LatticeState::term(v.clone(), self.pair_exp(h, &v.exp));
        }
        let part = n as u32;
        let mut out = LatticeState::zero();
        for target in [Heis::J, Heis::C] {
            let p = self.pair(h, target);
            if p.is_zero() {
                continue;
            }
            let parts = match target {
                Heis::J => &v.j,
                Heis::C => &v.c,
            };
            let mult = parts.multiplicity(part);
            if mult == 0 {
                continue;
            }
            let mut w = v.clone();
            match target {
                Heis::J => w.j = w.j.without_part(part).expect("part present"),
                Heis::C => w.c = w.c.without_part(part).expect("part present"),
            }
            out.add_term(w, p * int(n * mult as i64));
        }
        out
    }

    /// `h_n v`; the Heisenberg modes satisfy `[h_m, h'_n] = m ⟨h,h'⟩ δ_{m+n,0}`.
    pub fn h_mode(&self, h: &HeisVector, n: i64, v: &LatticeState) -> LatticeState {
        let (x, y) = self.to_jc(h);
        let mut out = LatticeState::zero();
        for (key, c) in v.iter() {
            if !x.is_zero() {
                out.add_scaled(&self.basis_mode(Heis::J, n, key), &(c * &x));
            }
            if !y.is_zero() {
                out.add_scaled(&self.basis_mode(Heis::C, n, key), &(c * &y));
            }
        }
        out
    }

    /// `e^{mc}_(n) v` on a basis vector, from
    /// `Y(e^{mc},z) = exp(Σ m c_(-n) z^n/n) exp(-Σ m c_(n) z^(-n)/n) e^{mc} z^{m c_0}`.
    fn exp_key(&self, m: i64, n: i64, v: &LatticeKey) -> Result<LatticeState> {
        let twice = m * v.exp.r.twice();
        if twice % 2 != 0 {
            return Err(Error::TwistedSector(format!("{}", HalfInt::from_twice(twice))));
        }
        let mr = twice / 2;
        let mut out = LatticeState::zero();
        if m == 0 {
            if n == -1 {
                out.add_term(v.clone(), RatFunc::one());
            }
            return Ok(out);
        }
        let shifted = v.exp.shift(m);
        // c_(n) j_(-n) = n, so the annihilation factor strips a sub-multiset λ of
        // the j-parts with weight (-m)^ℓ(λ) and multiplicity Π C(mult, k).
        let groups = v.j.grouped();
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut removed_len = 0i64;
            let mut removed_weight = 0i64;
            let mut mult = Rational::one();
            let mut rest = Vec::new();
            for (&(part, have), &take) in groups.iter().zip(&choice) {
                removed_len += take as i64;
                removed_weight += part as i64 * take as i64;
                mult *= Rational::from_integer(bpvoa_exact::binomial(have as i64, take as i64));
                rest.extend(std::iter::repeat_n(part, have - take));
            }
            let p = removed_weight - n - 1 - mr;
            if p >= 0 {
                let sign = Rational::from_integer((-m).into()).pow(removed_len as i32);
                let coeff = mult * sign;
                let rest = Partition::new(rest);
                for (nu, s) in schur_scaled(p as u32, m) {
                    let mut c_parts = v.c.parts().to_vec();
                    c_parts.extend_from_slice(nu.parts());
                    let key = LatticeKey::new(rest.clone(), Partition::new(c_parts), shifted.clone());
                    out.add_term(key, rq(&coeff * &s));
                }
            }
            // next sub-multiset
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return Ok(out);
                }
                if choice[i] < groups[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// `e^{mc}_(n) v` (Borcherds index). Fails in a twisted sector, where
    /// `m r ∉ ℤ` and the modes of `e^{mc}` are not integral.
    pub fn exp_mode(&self, m: i64, n: i64, v: &LatticeState) -> Result<LatticeState> {
        v.try_flat_map(|key| self.exp_key(m, n, key))
    }

    /// Conformal weight of a basis vector: depth plus `½⟨γ,γ⟩ - ⟨ρ,γ⟩` with
    /// `ρ = -j + (3/2)⟨j,j⟩ c`.
    pub fn key_weight(&self, key: &LatticeKey) -> RatFunc {
        let r = rq(key.exp.r.to_rational());
        let mu = &key.exp.mu;
        let base = (&r * &r * self.kappa.clone()).scale(&rat(1, 2)) + &r * mu
            - (&r * &self.kappa).scale(&rat(1, 2))
            + mu.clone();
        base + int(key.depth())
    }

    /// The `t_0`-eigenvalue of a homogeneous state.
    pub fn conformal_weight(&self, v: &LatticeState) -> Result<RatFunc> {
        let mut weights = v.keys().map(|k| self.key_weight(k));
        let first = weights
            .next()
            .ok_or_else(|| Error::Invalid("the zero vector has no weight".into()))?;
        if weights.any(|w| w != first) {
            return Err(Error::Invalid("state is not homogeneous".into()));
        }
        Ok(first)
    }

    /// The `i_0`-eigenvalue (the coefficient of `c` in the exponent).
    pub fn i0_charge(&self, key: &LatticeKey) -> RatFunc {
        key.exp.mu.clone()
    }

    /// `h_(-1) e^0`.
    pub fn heis_state(&self, h: &HeisVector) -> LatticeState {
        self.h_mode(h, -1, &LatticeState::single(LatticeKey::vacuum()))
    }

    pub fn ground_state(&self, exp: ExpGround) -> LatticeState {
        LatticeState::single(LatticeKey::ground(exp))
    }

    /// `t = ½ c_(-1) d_(-1) + (2k+3)/3 c_(-2) - ½ d_(-2)`, with `d = 2j - (2k+3)/3 c`.
    pub fn conformal_vector(&self) -> LatticeState {
        let vac = LatticeState::single(LatticeKey::vacuum());
        let d = HeisVector::d();
        let c = HeisVector::c();
        let cd = self.h_mode(&c, -1, &self.h_mode(&d, -1, &vac));
        let c2 = self.h_mode(&c, -2, &vac);
        let d2 = self.h_mode(&d, -2, &vac);
        cd.scale_rational(&rat(1, 2))
            .add(&c2.scale(&self.kappa))
            .sub(&d2.scale_rational(&rat(1, 2)))
    }

    pub fn central_charge(&self) -> RatFunc {
        let t = self.conformal_vector();
        let top = self.act_combo(&t, 3, &t);
        top.coeff(&LatticeKey::vacuum()) * int(2)
    }

    /// `ch Π_{-1}(λ) = y^{-1} z^λ η(q)^{-2} δ(z)` to order `N` in `q`.
    pub fn character(&self, lambda: RatFunc, order: usize) -> Character {
        Character {
            y_exp: RatFunc::from_int(-1),
            z_exp: lambda,
            delta: true,
            series: QSeries::eta_inverse_squared(order),
        }
    }

    /// The top space of `Π_r(λ)`, which exists only for `r = -1`.
    pub fn top_space(&self, r: HalfInt, lambda: RatFunc) -> Result<TopSpace> {
        if r != HalfInt::from_int(-1) {
            return Err(Error::Invalid(format!(
                "Π_{r}(λ) is not positive-energy; only r = -1 is"
            )));
        }
        Ok(TopSpace { lambda })
    }

    pub fn render(&self, s: &LatticeState) -> String {
        text::render_state(s)
    }

    pub fn parse_state(&self, s: &str) -> Result<LatticeState> {
        text::parse_state(s)
    }
}

/// `span{ e^{-j+(λ+n)c} : n ∈ ℤ }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSpace {
    pub lambda: RatFunc,
}

impl TopSpace {
    pub fn vector(&self, n: i64) -> LatticeState {
        LatticeState::single(LatticeKey::ground(ExpGround::relaxed(
            &self.lambda + &int(n),
        )))
    }

    /// Whether two top spaces carry the same `i_0`-spectrum `λ + ℤ`, so that the
    /// modules are isomorphic.
    pub fn same_module(&self, other: &TopSpace) -> bool {
        (&self.lambda - &other.lambda).to_integer().is_some()
    }
}

impl VertexModule for Pi {
    type Elem = LatticeKey;
    type Vector = LatticeKey;

    fn act(&self, a: &LatticeKey, n: i64, v: &LatticeKey) -> LatticeState {
        self.act_elem(a, n, v)
    }

    /// The depth is lowered by `p + 1 - depth(x) + m r_v` under `x_(p)`.
    fn max_index(&self, a: &LatticeKey, v: &LatticeKey) -> i64 {
        let m = a.exp.lattice_point().unwrap_or(0);
        let mr = (m * v.exp.r.twice()).div_euclid(2);
        a.depth() + v.depth() - mr - 1
    }
}

impl ModeAction for Pi {
    type Elem = LatticeKey;
    type Vector = LatticeKey;

    fn decompose(&self, x: &LatticeKey) -> Decomposition<LatticeKey> {
        if let Some(&part) = x.j.parts().first() {
            return Decomposition::Mode {
                generator: heis_generator(Heis::J),
                index: -(part as i64),
                rest: LatticeKey::new(x.j.without_part(part).expect("present"), x.c.clone(), x.exp.clone()),
            };
        }
        if let Some(&part) = x.c.parts().first() {
            return Decomposition::Mode {
                generator: heis_generator(Heis::C),
                index: -(part as i64),
                rest: LatticeKey::new(Partition::empty(), x.c.without_part(part).expect("present"), x.exp.clone()),
            };
        }
        if x.exp == ExpGround::zero() {
            Decomposition::Vacuum
        } else {
            Decomposition::Atom(x.clone())
        }
    }

    fn basic(&self, g: &LatticeKey, n: i64, v: &LatticeKey) -> LatticeState {
        if *g == heis_generator(Heis::J) {
            return self.basis_mode(Heis::J, n, v);
        }
        if *g == heis_generator(Heis::C) {
            return self.basis_mode(Heis::C, n, v);
        }
        let m = g
            .exp
            .lattice_point()
            .expect("only e^{mc} with m ∈ ℤ acts as a field of Π");
        self.exp_key(m, n, v).expect("untwisted sector")
    }

    fn bound(&self, x: &LatticeKey, v: &LatticeKey) -> i64 {
        self.max_index(x, v)
    }

    fn act_elem(&self, x: &LatticeKey, p: i64, v: &LatticeKey) -> LatticeState {
        if p > self.max_index(x, v) {
            return LatticeState::zero();
        }
        let key = (x.clone(), p, v.clone());
        if let Some(hit) = self.cache.read().get(&key) {
            return hit.clone();
        }
        let out = iterate_step(self, x, p, v);
        self.cache.write().insert(key, out.clone());
        out
    }
}

fn heis_generator(h: Heis) -> LatticeKey {
    let one = Partition::new(vec![1]);
    match h {
        Heis::J => LatticeKey::new(one, Partition::empty(), ExpGround::zero()),
        Heis::C => LatticeKey::new(Partition::empty(), one, ExpGround::zero()),
    }
}

impl VertexAlgebra for Pi {
    fn vacuum(&self) -> LatticeKey {
        LatticeKey::vacuum()
    }

    /// Leibniz rule with `∂ h_(-n) = n h_(-n-1)` and `∂ e^{μc} = μ c_(-1) e^{μc}`.
    fn derivative(&self, a: &LatticeKey) -> LatticeState {
        let mut out = LatticeState::zero();
        for (part, mult) in a.j.grouped() {
            let j = a.j.without_part(part).expect("present").with_part(part + 1);
            out.add_term(
                LatticeKey::new(j, a.c.clone(), a.exp.clone()),
                int(part as i64 * mult as i64),
            );
        }
        for (part, mult) in a.c.grouped() {
            let c = a.c.without_part(part).expect("present").with_part(part + 1);
            out.add_term(
                LatticeKey::new(a.j.clone(), c, a.exp.clone()),
                int(part as i64 * mult as i64),
            );
        }
        let shift = self.to_jc(&self.exp_vector(&a.exp));
        if !shift.0.is_zero() {
            out.add_term(a.with_j_part(1), shift.0);
        }
        if !shift.1.is_zero() {
            out.add_term(a.with_c_part(1), shift.1);
        }
        out
    }

    fn decompose(&self, a: &LatticeKey) -> Decomposition<LatticeKey> {
        ModeAction::decompose(self, a)
    }
}

impl LatticeKey {
    fn with_j_part(&self, p: u32) -> LatticeKey {
        LatticeKey::new(self.j.with_part(p), self.c.clone(), self.exp.clone())
    }

    fn with_c_part(&self, p: u32) -> LatticeKey {
        LatticeKey::new(self.j.clone(), self.c.with_part(p), self.exp.clone())
    }
}

pub mod flow;
