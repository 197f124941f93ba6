//! Abstract interfaces shared by the OPE engine, the half-lattice algebra and tensor products.

use std::fmt::Debug;
use std::hash::Hash;

use bpvoa_exact::RatFunc;

use crate::combo::Combo;

pub trait Key: Clone + Ord + Hash + Eq + Debug + Send + Sync {}
impl<T: Clone + Ord + Hash + Eq + Debug + Send + Sync> Key for T {}

/// A module over a vertex algebra, described on basis vectors.
pub trait VertexModule: Send + Sync {
    /// Basis of the algebra.
    type Elem: Key;
    /// Basis of the module.
    type Vector: Key;

    /// `a_(n) v`.
    fn act(&self, a: &Self::Elem, n: i64, v: &Self::Vector) -> Combo<Self::Vector>;

    /// Every `a_(n) v` with `n` above this bound vanishes.
    fn max_index(&self, a: &Self::Elem, v: &Self::Vector) -> i64;

    fn act_combo(
        &self,
        a: &Combo<Self::Elem>,
        n: i64,
        v: &Combo<Self::Vector>,
    ) -> Combo<Self::Vector> {
        let mut out = Combo::zero();
        for (x, c) in a.iter() {
            for (y, d) in v.iter() {
                let prod = self.act(x, n, y);
                if !prod.is_zero() {
                    out.add_scaled(&prod, &(c * d));
                }
            }
        }
        out
    }

    /// Largest index with a possibly nonzero product between two combinations.
    fn max_index_combo(&self, a: &Combo<Self::Elem>, v: &Combo<Self::Vector>) -> Option<i64> {
        let mut best = None;
        for x in a.keys() {
            for y in v.keys() {
                let m = self.max_index(x, y);
                best = Some(best.map_or(m, |b: i64| b.max(m)));
            }
        }
        best
    }
}

/// How a basis element is built from simpler ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition<K> {
    Vacuum,
    /// An element not of the form `g_(n) rest` with `g` a strong generator.
    Atom(K),
    /// `generator_(index) rest`.
    Mode { generator: K, index: i64, rest: K },
}

/// A vertex algebra acting on itself.
pub trait VertexAlgebra: VertexModule<Vector = <Self as VertexModule>::Elem> {
    fn vacuum(&self) -> Self::Elem;

    fn derivative(&self, a: &Self::Elem) -> Combo<Self::Elem>;

    fn decompose(&self, a: &Self::Elem) -> Decomposition<Self::Elem>;

    fn vacuum_combo(&self) -> Combo<Self::Elem> {
        Combo::single(self.vacuum())
    }

    fn derivative_combo(&self, a: &Combo<Self::Elem>) -> Combo<Self::Elem> {
        a.flat_map(|x| self.derivative(x))
    }

    /// The singular part `{ j ↦ a_(j) b : j ≥ 0 }` with zero products omitted.
    fn singular_products(
        &self,
        a: &Combo<Self::Elem>,
        b: &Combo<Self::Elem>,
    ) -> Vec<(i64, Combo<Self::Elem>)> {
        let top = match self.max_index_combo(a, b) {
            Some(t) => t,
            None => return Vec::new(),
        };
        (0..=top)
            .rev()
            .map(|j| (j, self.act_combo(a, j, b)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }
}

/// `∂^(i) = ∂^i / i!` applied to a combination.
pub fn divided_derivative<A: VertexAlgebra + ?Sized>(
    alg: &A,
    a: &Combo<A::Elem>,
    i: u32,
) -> Combo<A::Elem> {
    let mut out = a.clone();
    for step in 1..=i {
        out = alg
            .derivative_combo(&out)
            .scale(&RatFunc::from_rational(bpvoa_exact::rat(1, step as i64)));
    }
    out
}

/// An action of a vertex algebra in which strong generators and atoms act
/// directly and composite elements act through the iterate identity
/// `(g_(-q) y)_(p) = Σ_i C(q+i-1,i) [g_(-q-i) y_(p+i) - (-1)^q y_(-q+p-i) g_(i)]`.
pub trait ModeAction: Sync {
    type Elem: Key;
    type Vector: Key;

    fn decompose(&self, x: &Self::Elem) -> Decomposition<Self::Elem>;

    /// `g_(n) v` for a strong generator or an atom.
    fn basic(&self, g: &Self::Elem, n: i64, v: &Self::Vector) -> Combo<Self::Vector>;

    /// Every `x_(p) v` with `p` above this bound vanishes.
    fn bound(&self, x: &Self::Elem, v: &Self::Vector) -> i64;

    /// `x_(p) v`; implementors may cache around [`iterate_step`].
    fn act_elem(&self, x: &Self::Elem, p: i64, v: &Self::Vector) -> Combo<Self::Vector> {
        iterate_step(self, x, p, v)
    }
}

/// One expansion of `x_(p) v` by the iterate identity, recursing through
/// [`ModeAction::act_elem`].
pub fn iterate_step<M: ModeAction + ?Sized>(
    m: &M,
    x: &M::Elem,
    p: i64,
    v: &M::Vector,
) -> Combo<M::Vector> {
    if p > m.bound(x, v) {
        return Combo::zero();
    }
    match m.decompose(x) {
        Decomposition::Vacuum => {
            if p == -1 {
                Combo::single(v.clone())
            } else {
                Combo::zero()
            }
        }
        Decomposition::Atom(a) => m.basic(&a, p, v),
        Decomposition::Mode {
            generator,
            index,
            rest,
        } => {
            if index == -1 && m.decompose(&rest) == Decomposition::Vacuum {
                return m.basic(&generator, p, v);
            }
            assert!(index < 0, "elements are built from creation modes");
            let q = -index;
            let mut out = Combo::zero();
            let top1 = m.bound(&rest, v) - p;
            for i in 0..=top1.max(-1) {
                let c = RatFunc::from_rational(bpvoa_exact::Rational::from_integer(
                    bpvoa_exact::binomial(q + i - 1, i),
                ));
                let inner = m.act_elem(&rest, p + i, v);
                for (w, d) in inner.iter() {
                    out.add_scaled(&m.basic(&generator, -q - i, w), &(&c * d));
                }
            }
            let top2 = m.bound(&generator, v);
            let sign = if q % 2 == 0 { -1 } else { 1 };
            for i in 0..=top2.max(-1) {
                let c = RatFunc::from_rational(bpvoa_exact::Rational::from_integer(
                    bpvoa_exact::binomial(q + i - 1, i) * sign,
                ));
                let inner = m.basic(&generator, i, v);
                for (w, d) in inner.iter() {
                    out.add_scaled(&m.act_elem(&rest, -q + p - i, w), &(&c * d));
                }
            }
            out
        }
    }
}
