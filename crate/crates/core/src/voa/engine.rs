use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use bpvoa_exact::{binomial, rat, RatFunc, Rational};
use num_traits::Zero;
use parking_lot::RwLock;

use crate::algebra::{Decomposition, VertexAlgebra, VertexModule};
use crate::combo::Combo;
use crate::error::Result;
use crate::voa::table::OpeTable;
use crate::voa::types::{Ground, HwGround, Mode, PbwMonomial, State};
use crate::weight::HalfInt;

#[derive(Default)]
struct Caches {
    modes: RwLock<HashMap<(Mode, PbwMonomial), State>>,
    composite: RwLock<HashMap<(PbwMonomial, i64, PbwMonomial), State>>,
}

/// A universal vertex algebra presented by an OPE table, acting on its vacuum module.
pub struct Voa {
    table: OpeTable,
    completed: RwLock<HashMap<(usize, usize), Arc<BTreeMap<i64, State>>>>,
    caches: Caches,
}

/// A highest-weight (Verma-type) module, or its one-dimensional top quotient.
pub struct VoaModule {
    voa: Arc<Voa>,
    ground: Ground,
    caches: Caches,
}

fn rf(c: Rational) -> RatFunc {
    RatFunc::from_rational(c)
}

fn int(n: num_bigint::BigInt) -> RatFunc {
    rf(Rational::from_integer(n))
}

struct Ctx<'a> {
    voa: &'a Voa,
    ground: &'a Ground,
    caches: &'a Caches,
}

impl Ctx<'_> {
    fn table(&self) -> &OpeTable {
        &self.voa.table
    }

    /// Weight added by the creation mode, or removed by an annihilation mode
    /// when negative.
    fn mode_weight(&self, m: Mode) -> HalfInt {
        self.table().weight(m.gen) - HalfInt::from_int(m.index + 1)
    }

    fn level(&self, v: &PbwMonomial) -> HalfInt {
        v.0.iter()
            .fold(HalfInt::ZERO, |acc, &m| acc + self.mode_weight(m))
    }

    fn is_creation(&self, m: Mode) -> bool {
        match self.ground {
            Ground::Vacuum => m.index <= -1,
            Ground::HighestWeight(_) => self.mode_weight(m) > HalfInt::ZERO,
        }
    }

    fn on_ground(&self, m: Mode) -> State {
        match self.ground {
            Ground::Vacuum => {
                if m.index <= -1 {
                    State::single(PbwMonomial(vec![m]))
                } else {
                    State::zero()
                }
            }
            Ground::HighestWeight(hw) => {
                let w = self.mode_weight(m);
                if w > HalfInt::ZERO {
                    if hw.top_only {
                        State::zero()
                    } else {
                        State::single(PbwMonomial(vec![m]))
                    }
                } else if w == HalfInt::ZERO {
                    State::term(PbwMonomial::empty(), hw.eigenvalues[m.gen].clone())
                } else {
                    State::zero()
                }
            }
        }
    }

    fn apply_mode(&self, m: Mode, v: &PbwMonomial) -> State {
        if v.is_empty() {
            return self.on_ground(m);
        }
        let creation = self.is_creation(m);
        if creation && m <= v.0[0] {
            let mut modes = Vec::with_capacity(v.0.len() + 1);
            modes.push(m);
            modes.extend_from_slice(&v.0);
            return State::single(PbwMonomial(modes));
        }
        if self.level(v) + self.mode_weight(m) < HalfInt::ZERO {
            return State::zero();
        }
        let key = (m, v.clone());
        if let Some(hit) = self.caches.modes.read().get(&key) {
            return hit.clone();
        }
        let first = v.0[0];
        let rest = v.rest();
        let mut out = State::zero();
        for (mono, c) in self.apply_mode(m, &rest).iter() {
            out.add_scaled(&self.apply_mode(first, mono), c);
        }
        let comm = self.commutator_on(m, first, &rest);
        out.add_scaled(&comm, &RatFunc::one());
        self.caches.modes.write().insert(key, out.clone());
        out
    }

    fn apply_mode_state(&self, m: Mode, v: &State) -> State {
        v.flat_map(|mono| self.apply_mode(m, mono))
    }

    /// `[a_(m), b_(n)] v = Σ_j C(m,j) (a_(j)b)_(m+n-j) v`.
    fn commutator_on(&self, a: Mode, b: Mode, v: &PbwMonomial) -> State {
        let products = self.voa.products(a.gen, b.gen);
        let mut out = State::zero();
        for (&j, x) in products.iter() {
            let c = binomial(a.index, j);
            if c.is_zero() || x.is_zero() {
                continue;
            }
            let term = self.apply_state(x, a.index + b.index - j, v);
            out.add_scaled(&term, &int(c));
        }
        out
    }

    fn apply_state(&self, x: &State, p: i64, v: &PbwMonomial) -> State {
        let mut out = State::zero();
        for (xm, c) in x.iter() {
            out.add_scaled(&self.apply_monomial(xm, p, v), c);
        }
        out
    }

    fn max_index(&self, x: &PbwMonomial, v: &PbwMonomial) -> i64 {
        (self.table().vacuum_weight(x) + self.level(v)).floor() - 1
    }

    /// `x_(p) v` for a vacuum-module monomial `x`, via the iterate identity
    /// `(a_(-q) y)_(p) = Σ_i (-1)^i C(-q,i) [a_(-q-i) y_(p+i) - (-1)^q y_(-q+p-i) a_(i)]`.
    fn apply_monomial(&self, x: &PbwMonomial, p: i64, v: &PbwMonomial) -> State {
        if x.is_empty() {
            return if p == -1 {
                State::single(v.clone())
            } else {
                State::zero()
            };
        }
        if p > self.max_index(x, v) {
            return State::zero();
        }
        if x.0.len() == 1 && x.0[0].index == -1 {
            return self.apply_mode(Mode::new(x.0[0].gen, p), v);
        }
        let key = (x.clone(), p, v.clone());
        if let Some(hit) = self.caches.composite.read().get(&key) {
            return hit.clone();
        }
        let a = x.0[0].gen;
        let q = -x.0[0].index;
        let y = x.rest();
        let mut out = State::zero();
        let top1 = self.max_index(&y, v) - p;
        for i in 0..=top1.max(-1) {
            // (-1)^i C(-q, i) = C(q+i-1, i)
            let c = int(binomial(q + i - 1, i));
            let inner = self.apply_monomial(&y, p + i, v);
            for (mono, d) in inner.iter() {
                out.add_scaled(&self.apply_mode(Mode::new(a, -q - i), mono), &(&c * d));
            }
        }
        let top2 = (self.table().weight(a) + self.level(v)).floor() - 1;
        let sign = if q % 2 == 0 { -1 } else { 1 };
        for i in 0..=top2.max(-1) {
            let c = int(binomial(q + i - 1, i) * sign);
            let inner = self.apply_mode(Mode::new(a, i), v);
            for (mono, d) in inner.iter() {
                out.add_scaled(&self.apply_monomial(&y, -q + p - i, mono), &(&c * d));
            }
        }
        self.caches.composite.write().insert(key, out.clone());
        out
    }

    fn apply_raw(&self, modes: &[Mode], v: &State) -> State {
        let mut cur = v.clone();
        for &m in modes.iter().rev() {
            cur = self.apply_mode_state(m, &cur);
        }
        cur
    }
}

impl Voa {
    pub fn new(table: OpeTable) -> Result<Arc<Voa>> {
        table.validate()?;
        Ok(Arc::new(Voa {
            table,
            completed: RwLock::new(HashMap::new()),
            caches: Caches::default(),
        }))
    }

    pub fn table(&self) -> &OpeTable {
        &self.table
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            voa: self,
            ground: &Ground::Vacuum,
            caches: &self.caches,
        }
    }

    /// All `a_(j) b`, `j ≥ 0`, reading the table or completing it by skew-symmetry
    /// `a_(n)b = Σ_i (-1)^(n+i+1) ∂^(i)(b_(n+i)a)`.
    pub fn products(&self, a: usize, b: usize) -> Arc<BTreeMap<i64, State>> {
        if let Some(d) = self.table.declared(a, b) {
            if let Some(hit) = self.completed.read().get(&(a, b)) {
                return hit.clone();
            }
            let arc = Arc::new(d.clone());
            self.completed.write().insert((a, b), arc.clone());
            return arc;
        }
        if let Some(hit) = self.completed.read().get(&(a, b)) {
            return hit.clone();
        }
        let reverse = self
            .table
            .declared(b, a)
            .expect("validated table declares every pair")
            .clone();
        let top = (self.table.weight(a) + self.table.weight(b)).floor() - 1;
        let mut out = BTreeMap::new();
        for n in 0..=top {
            let mut s = State::zero();
            for (&j, x) in reverse.iter() {
                let i = j - n;
                if i < 0 || x.is_zero() {
                    continue;
                }
                let mut d = x.clone();
                for step in 1..=i {
                    d = self.derivative(&d).scale_rational(&rat(1, step));
                }
                let sign = if (n + i + 1) % 2 == 0 { 1 } else { -1 };
                s.add_scaled(&d, &RatFunc::from_int(sign));
            }
            if !s.is_zero() {
                out.insert(n, s);
            }
        }
        let arc = Arc::new(out);
        self.completed.write().insert((a, b), arc.clone());
        arc
    }

    pub fn generator(&self, name: &str) -> Result<usize> {
        self.table.generator_index(name)
    }

    /// The state `a_(-1)|0>` of a generator.
    pub fn generator_state(&self, name: &str) -> Result<State> {
        let g = self.generator(name)?;
        Ok(self.gen_state(g))
    }

    pub fn gen_state(&self, g: usize) -> State {
        State::single(PbwMonomial(vec![Mode::new(g, -1)]))
    }

    pub fn vacuum_state(&self) -> State {
        State::single(PbwMonomial::empty())
    }

    pub fn weight(&self, mono: &PbwMonomial) -> HalfInt {
        self.table.vacuum_weight(mono)
    }

    /// Applies a single generator mode to a state of the vacuum module.
    pub fn apply_mode(&self, m: Mode, v: &State) -> State {
        self.ctx().apply_mode_state(m, v)
    }

    pub fn nth_product(&self, a: &State, n: i64, b: &State) -> State {
        let ctx = self.ctx();
        let mut out = State::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&ctx.apply_monomial(x, n, y), &(c * d));
            }
        }
        out
    }

    /// Leibniz rule with `∂ a_(n) = -n a_(n-1)` on modes and `∂|0> = 0`.
    pub fn derivative(&self, a: &State) -> State {
        let ctx = self.ctx();
        let mut out = State::zero();
        for (mono, c) in a.iter() {
            for (i, m) in mono.0.iter().enumerate() {
                if m.index == 0 {
                    continue;
                }
                let mut modes = mono.0.clone();
                modes[i].index -= 1;
                let s = ctx.apply_raw(&modes, &self.vacuum_state());
                out.add_scaled(&s, &(c * &RatFunc::from_int(-m.index)));
            }
        }
        out
    }

    /// The product `modes[0] modes[1] ... |0>` in PBW form.
    pub fn normal_order(&self, modes: &[Mode]) -> State {
        self.ctx().apply_raw(modes, &self.vacuum_state())
    }

    /// `[a_(m), b_(n)]` as `Σ (X_j)_(p_j)` with `X_j = C(m,j) a_(j)b` and `p_j = m+n-j`.
    pub fn mode_commutator(&self, a: Mode, b: Mode) -> Vec<(State, i64)> {
        self.products(a.gen, b.gen)
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(&j, x)| {
                (
                    x.scale(&int(binomial(a.index, j))),
                    a.index + b.index - j,
                )
            })
            .filter(|(x, _)| !x.is_zero())
            .collect()
    }

    /// PBW monomials of the vacuum module of the given weight.
    pub fn pbw_basis(&self, weight: HalfInt) -> Vec<PbwMonomial> {
        let weights: Vec<HalfInt> = self.table.generators().iter().map(|g| g.weight).collect();
        // most negative index whose mode still fits in the remaining weight
        let lowest = |g: usize, left: HalfInt| {
            let t = weights[g] - HalfInt::from_int(1) - left;
            -((-t).floor())
        };
        fn rec(
            weights: &[HalfInt],
            lowest: &dyn Fn(usize, HalfInt) -> i64,
            g: usize,
            min_index: i64,
            left: HalfInt,
            cur: &mut Vec<Mode>,
            out: &mut Vec<PbwMonomial>,
        ) {
            if g == weights.len() {
                if left == HalfInt::ZERO {
                    out.push(PbwMonomial(cur.clone()));
                }
                return;
            }
            for idx in min_index..=-1 {
                let add = weights[g] - HalfInt::from_int(idx + 1);
                if add <= left {
                    cur.push(Mode::new(g, idx));
                    rec(weights, lowest, g, idx, left - add, cur, out);
                    cur.pop();
                }
            }
            if g + 1 < weights.len() {
                rec(weights, lowest, g + 1, lowest(g + 1, left), left, cur, out);
            } else {
                rec(weights, lowest, g + 1, 0, left, cur, out);
            }
        }
        let mut out = Vec::new();
        if weights.is_empty() {
            if weight == HalfInt::ZERO {
                out.push(PbwMonomial::empty());
            }
            return out;
        }
        rec(&weights, &lowest, 0, lowest(0, weight), weight, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Dimensions of the weight spaces `0, 1, ..., n` (integer weights only).
    pub fn graded_dimension(&self, n: i64) -> Vec<usize> {
        (0..=n)
            .map(|w| self.pbw_basis(HalfInt::from_int(w)).len())
            .collect()
    }

    pub fn module(self: &Arc<Self>, ground: HwGround) -> VoaModule {
        VoaModule {
            voa: self.clone(),
            ground: Ground::HighestWeight(ground),
            caches: Caches::default(),
        }
    }

    pub fn render(&self, s: &State) -> String {
        self.table.render_state(s, &Ground::Vacuum)
    }

    pub fn parse_state(&self, text: &str) -> Result<State> {
        let (s, g) = self.table.parse_state(text)?;
        if g != Ground::Vacuum {
            return Err(crate::error::Error::State(
                "expected a vacuum-module state".into(),
            ));
        }
        Ok(s)
    }
}

impl VoaModule {
    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            voa: &self.voa,
            ground: &self.ground,
            caches: &self.caches,
        }
    }

    pub fn voa(&self) -> &Arc<Voa> {
        &self.voa
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn ground_state(&self) -> State {
        State::single(PbwMonomial::empty())
    }

    pub fn apply_mode(&self, m: Mode, v: &State) -> State {
        self.ctx().apply_mode_state(m, v)
    }

    /// `x_(p) v` for a vacuum-module state `x`.
    pub fn act_state(&self, x: &State, p: i64, v: &State) -> State {
        let ctx = self.ctx();
        let mut out = State::zero();
        for (xm, c) in x.iter() {
            for (vm, d) in v.iter() {
                out.add_scaled(&ctx.apply_monomial(xm, p, vm), &(c * d));
            }
        }
        out
    }

    pub fn normal_order(&self, modes: &[Mode]) -> State {
        self.ctx().apply_raw(modes, &self.ground_state())
    }

    /// Weight above the ground.
    pub fn level(&self, v: &PbwMonomial) -> HalfInt {
        self.ctx().level(v)
    }

    pub fn render(&self, s: &State) -> String {
        self.voa.table.render_state(s, &self.ground)
    }
}

impl VertexModule for Voa {
    type Elem = PbwMonomial;
    type Vector = PbwMonomial;

    fn act(&self, a: &PbwMonomial, n: i64, v: &PbwMonomial) -> Combo<PbwMonomial> {
        self.ctx().apply_monomial(a, n, v)
    }

    fn max_index(&self, a: &PbwMonomial, v: &PbwMonomial) -> i64 {
        self.ctx().max_index(a, v)
    }
}

impl VertexAlgebra for Voa {
    fn vacuum(&self) -> PbwMonomial {
        PbwMonomial::empty()
    }

    fn derivative(&self, a: &PbwMonomial) -> Combo<PbwMonomial> {
        Voa::derivative(self, &State::single(a.clone()))
    }

    fn decompose(&self, a: &PbwMonomial) -> Decomposition<PbwMonomial> {
        match a.0.first() {
            None => Decomposition::Vacuum,
            Some(m) => Decomposition::Mode {
                generator: PbwMonomial(vec![Mode::new(m.gen, -1)]),
                index: m.index,
                rest: a.rest(),
            },
        }
    }
}

impl VertexModule for VoaModule {
    type Elem = PbwMonomial;
    type Vector = PbwMonomial;

    fn act(&self, a: &PbwMonomial, n: i64, v: &PbwMonomial) -> Combo<PbwMonomial> {
        self.ctx().apply_monomial(a, n, v)
    }

    fn max_index(&self, a: &PbwMonomial, v: &PbwMonomial) -> i64 {
        self.ctx().max_index(a, v)
    }
}
