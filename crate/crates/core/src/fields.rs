//! Fields multiplied by powers of `z`, as produced by spectral flow and
//! conjugation, and the twisted mode actions they define.

use std::collections::{BTreeMap, HashMap};

use bpvoa_exact::{binomial, RatFunc, Rational};
use parking_lot::RwLock;

use crate::algebra::{iterate_step, Decomposition, Key, ModeAction, VertexAlgebra, VertexModule};
use crate::combo::Combo;

/// `Σ_s z^s Y(X_s, z)`. The expansion is unique, so structural equality is
/// equality of fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedField<K: Ord> {
    terms: BTreeMap<i64, Combo<K>>,
}

impl<K: Key> ShiftedField<K> {
    pub fn zero() -> Self {
        ShiftedField {
            terms: BTreeMap::new(),
        }
    }

    /// `Y(x, z)`.
    pub fn of(x: Combo<K>) -> Self {
        ShiftedField::zero().plus(0, &x)
    }

    /// `self + z^s Y(x, z)`.
    pub fn plus(mut self, s: i64, x: &Combo<K>) -> Self {
        let e = self.terms.entry(s).or_default();
        e.add_scaled(x, &RatFunc::one());
        if e.is_zero() {
            self.terms.remove(&s);
        }
        self
    }

    pub fn add(&self, other: &ShiftedField<K>) -> Self {
        other.terms.iter().fold(self.clone(), |acc, (&s, x)| acc.plus(s, x))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|x| x.scale(c))
    }

    /// `z^s F(z)`.
    pub fn shift(&self, s: i64) -> Self {
        ShiftedField {
            terms: self.terms.iter().map(|(&t, x)| (t + s, x.clone())).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Combo<K>)> {
        self.terms.iter().map(|(&s, x)| (s, x))
    }

    /// `F_(n) = Σ_s (X_s)_(n+s)`.
    pub fn modes(&self, n: i64) -> impl Iterator<Item = (&Combo<K>, i64)> {
        self.terms.iter().map(move |(&s, x)| (x, n + s))
    }

    /// Applies a linear map to every component.
    pub fn map<L: Key>(&self, mut f: impl FnMut(&Combo<K>) -> Combo<L>) -> ShiftedField<L> {
        self.terms
            .iter()
            .fold(ShiftedField::zero(), |acc, (&s, x)| acc.plus(s, &f(x)))
    }
}

/// The mode action `x ↦ σ(x)` of a vertex algebra on itself in which the
/// strong generators and atoms act through transformed fields and composites
/// through the iterate identity.
pub struct Twisted<'a, A: VertexAlgebra> {
    alg: &'a A,
    field: Box<dyn Fn(&A::Elem) -> ShiftedField<A::Elem> + Send + Sync + 'a>,
    cache: RwLock<HashMap<(A::Elem, i64, A::Elem), Combo<A::Elem>>>,
}

impl<'a, A: VertexAlgebra> Twisted<'a, A> {
    /// `field` gives the transformed field of every generator or atom.
    pub fn new(
        alg: &'a A,
        field: impl Fn(&A::Elem) -> ShiftedField<A::Elem> + Send + Sync + 'a,
    ) -> Self {
        Twisted {
            alg,
            field: Box::new(field),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &A {
        self.alg
    }

    /// How far the transformed field of a generator reaches past its own bound.
    fn slack(&self, g: &A::Elem, v: &A::Elem) -> i64 {
        let own = self.alg.max_index(g, v);
        let f = (self.field)(g);
        let reach = f
            .terms()
            .filter_map(|(s, x)| self.alg.max_index_combo(x, &Combo::single(v.clone())).map(|b| b - s))
            .max()
            .unwrap_or(own);
        (reach - own).max(0)
    }

    fn total_slack(&self, x: &A::Elem, v: &A::Elem) -> i64 {
        match self.alg.decompose(x) {
            Decomposition::Vacuum => 0,
            Decomposition::Atom(a) => self.slack(&a, v),
            Decomposition::Mode {
                generator, rest, ..
            } => self.slack(&generator, v) + self.total_slack(&rest, v),
        }
    }
}

impl<A: VertexAlgebra> ModeAction for Twisted<'_, A> {
    type Elem = A::Elem;
    type Vector = A::Elem;

    fn decompose(&self, x: &A::Elem) -> Decomposition<A::Elem> {
        self.alg.decompose(x)
    }

    fn basic(&self, g: &A::Elem, n: i64, v: &A::Elem) -> Combo<A::Elem> {
        let f = (self.field)(g);
        let v = Combo::single(v.clone());
        let mut out = Combo::zero();
        for (x, m) in f.modes(n) {
            out.add_scaled(&self.alg.act_combo(x, m, &v), &RatFunc::one());
        }
        out
    }

    fn bound(&self, x: &A::Elem, v: &A::Elem) -> i64 {
        self.alg.max_index(x, v) + self.total_slack(x, v)
    }

    fn act_elem(&self, x: &A::Elem, p: i64, v: &A::Elem) -> Combo<A::Elem> {
        if p > self.bound(x, v) {
            return Combo::zero();
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

impl<A: VertexAlgebra> VertexModule for Twisted<'_, A> {
    type Elem = A::Elem;
    type Vector = A::Elem;

    fn act(&self, a: &A::Elem, n: i64, v: &A::Elem) -> Combo<A::Elem> {
        self.act_elem(a, n, v)
    }

    fn max_index(&self, a: &A::Elem, v: &A::Elem) -> i64 {
        self.bound(a, v)
    }
}

/// One failed mode commutator in [`check_commutators`].
#[derive(Debug, Clone)]
pub struct CommutatorFailure<K> {
    pub a: usize,
    pub b: usize,
    pub m: i64,
    pub n: i64,
    pub vector: K,
}

/// Checks `[σ(A)_(m), σ(B)_(n)] v = Σ_j C(m,j) σ(A_(j)B)_(m+n-j) v` for all
/// pairs of `gens`, all `m, n` in the range and all test vectors, where
/// `A_(j)B` is computed in the untwisted algebra.
pub fn check_commutators<A: VertexAlgebra>(
    tw: &Twisted<'_, A>,
    gens: &[Combo<A::Elem>],
    vectors: &[A::Elem],
    range: std::ops::RangeInclusive<i64>,
) -> (usize, Vec<CommutatorFailure<A::Elem>>) {
    let alg = tw.algebra();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (ia, a) in gens.iter().enumerate() {
        for (ib, b) in gens.iter().enumerate() {
            let products = alg.singular_products(a, b);
            for m in range.clone() {
                for n in range.clone() {
                    for v in vectors {
                        let v1 = Combo::single(v.clone());
                        let ab = tw.act_combo(a, m, &tw.act_combo(b, n, &v1));
                        let ba = tw.act_combo(b, n, &tw.act_combo(a, m, &v1));
                        let lhs = ab.sub(&ba);
                        let mut rhs = Combo::zero();
                        for (j, x) in &products {
                            let c = binomial(m, *j);
                            if c == 0.into() {
                                continue;
                            }
                            let term = tw.act_combo(x, m + n - j, &v1);
                            rhs.add_scaled(&term, &RatFunc::from_rational(Rational::from_integer(c)));
                        }
                        checked += 1;
                        if lhs != rhs {
                            failures.push(CommutatorFailure {
                                a: ia,
                                b: ib,
                                m,
                                n,
                                vector: v.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    (checked, failures)
}
