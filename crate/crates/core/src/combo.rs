use std::collections::BTreeMap;

use bpvoa_exact::{Rational, RatFunc, Var};

use crate::error::Result;

/// A finite linear combination of basis keys with rational-function coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combo<K: Ord> {
    terms: BTreeMap<K, RatFunc>,
}

impl<K: Ord> Default for Combo<K> {
    fn default() -> Self {
        Combo {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Combo<K> {
    pub fn zero() -> Self {
        Combo::default()
    }

    pub fn single(k: K) -> Self {
        Combo::term(k, RatFunc::one())
    }

    pub fn term(k: K, c: RatFunc) -> Self {
        let mut out = Combo::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, RatFunc)>) -> Self {
        let mut out = Combo::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &RatFunc)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> RatFunc {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: K, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Combo<K>, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), if c.is_one() { v.clone() } else { v * c });
        }
    }

    pub fn add(&self, other: &Combo<K>) -> Combo<K> {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &Combo<K>) -> Combo<K> {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Combo<K> {
        let mut out = Combo::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Combo<K> {
        Combo::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v.scale(c))))
    }

    pub fn neg(&self) -> Combo<K> {
        self.scale(&RatFunc::from_int(-1))
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Combo<L> {
        Combo::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> Result<RatFunc>) -> Result<Combo<K>> {
        let mut out = Combo::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v)?);
        }
        Ok(out)
    }

    pub fn specialize(&self, bindings: &[(Var, Rational)]) -> Result<Combo<K>> {
        self.map_coeffs(|c| Ok(c.specialize(bindings)?))
    }

    /// Expands `f` linearly over the terms.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combo<L>) -> Combo<L> {
        let mut out = Combo::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_flat_map<L: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Result<Combo<L>>,
    ) -> Result<Combo<L>> {
        let mut out = Combo::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, RatFunc)> for Combo<K> {
    fn from_iter<I: IntoIterator<Item = (K, RatFunc)>>(iter: I) -> Self {
        Combo::from_terms(iter)
    }
}
