//! Schur polynomials in the `c`-modes and the basis of `e^c`-modes.

use std::collections::BTreeMap;

use bpvoa_exact::{RatFunc, Rational};
use num_traits::{One, Zero};

use super::{ExpGround, LatticeKey, LatticeState};
use crate::combo::Combo;
use crate::partition::Partition;

/// `z_λ = Π n^{k_n} k_n!` for `λ = (1^{k_1} 2^{k_2} ...)`.
fn z_factor(p: &Partition) -> Rational {
    let mut z = Rational::one();
    for (part, mult) in p.grouped() {
        for i in 1..=mult {
            z *= Rational::from_integer((part as i64 * i as i64).into());
        }
    }
    z
}

/// `S_p(mc) = Σ_{λ ⊢ p} m^ℓ(λ) / z_λ c_(-λ)`, the coefficient of `z^p` in
/// `exp(Σ_n m c_(-n) z^n / n)`.
pub fn schur_scaled(p: u32, m: i64) -> Vec<(Partition, Rational)> {
    Partition::all_of(p)
        .into_iter()
        .map(|lam| {
            let mpow = Rational::from_integer(m.into()).pow(lam.len() as i32);
            let c = mpow / z_factor(&lam);
            (lam, c)
        })
        .collect()
}

/// `S_p(c)`.
pub fn schur(p: u32) -> Vec<(Partition, Rational)> {
    schur_scaled(p, 1)
}

/// `j_(-μ) e^c_{-ν} e^{γ}` in the module convention, i.e. `j_(-μ) S_{ν_1}(c) ⋯
/// S_{ν_ℓ}(c) e^{γ+ℓc}`. For the vacuum module with `γ = nc` this is
/// `j_(-μ) e^c_(-ν-1) e^{nc}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BKey {
    pub j: Partition,
    pub nu: Partition,
    pub exp: ExpGround,
}

fn schur_product(nu: &Partition) -> BTreeMap<Partition, Rational> {
    let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
    acc.insert(Partition::empty(), Rational::one());
    for &part in nu.parts() {
        let mut next: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (p, c) in &acc {
            for (q, d) in schur(part) {
                let mut parts = p.parts().to_vec();
                parts.extend_from_slice(q.parts());
                let e = next.entry(Partition::new(parts)).or_insert_with(Rational::zero);
                *e += c * &d;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

impl BKey {
    pub fn expand(&self) -> LatticeState {
        let exp = self.exp.shift(self.nu.len() as i64);
        Combo::from_terms(schur_product(&self.nu).into_iter().map(|(c, x)| {
            (
                LatticeKey::new(self.j.clone(), c, exp.clone()),
                RatFunc::from_rational(x),
            )
        }))
    }
}

pub fn from_b_basis(v: &Combo<BKey>) -> LatticeState {
    v.flat_map(BKey::expand)
}

/// Inverts [`from_b_basis`]: the `c`-mode monomial with fewest parts determines
/// the next basis element, whose expansion is `c_(-ν) e^{γ} / Π ν_i` plus
/// monomials with more parts.
pub fn to_b_basis(v: &LatticeState) -> Combo<BKey> {
    let mut rest = v.clone();
    let mut out = Combo::zero();
    while let Some((key, coeff)) = rest
        .iter()
        .min_by_key(|(k, _)| (k.c.len(), (*k).clone()))
        .map(|(k, c)| (k.clone(), c.clone()))
    {
        let ell = key.c.len() as i64;
        let b = BKey {
            j: key.j.clone(),
            nu: key.c.clone(),
            exp: key.exp.shift(-ell),
        };
        let a = coeff.scale(&Rational::from_integer(key.c.product().into()));
        rest.add_scaled(&b.expand(), &-a.clone());
        out.add_term(b, a);
    }
    out
}
