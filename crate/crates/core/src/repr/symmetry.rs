//! Spectral flow and conjugation of BP as transformations of the generating fields.

use bpvoa_exact::{rat, RatFunc};

use crate::fields::{ShiftedField, Twisted};
use crate::presentations::{GM, GP, J, L};
use crate::voa::{PbwMonomial, State, Voa};
use crate::weight::HalfInt;

fn generator_of(g: &PbwMonomial) -> usize {
    match g.modes() {
        [m] if m.index == -1 => m.gen,
        _ => panic!("not a strong generator: {g:?}"),
    }
}

fn kappa(k: &RatFunc) -> RatFunc {
    (RatFunc::from_int(2) * k.clone() + RatFunc::from_int(3)).scale(&rat(1, 3))
}

/// `σ^ℓ` on the field of BP generator `gen`:
/// `G± ↦ z^{∓ℓ} G±`, `J ↦ J - (2k+3)/3 ℓ z^{-1}`,
/// `L ↦ L - ℓ z^{-1} J + (2k+3)/3 ℓ(ℓ+1)/2 z^{-2}`.
/// Only integral `ℓ` gives integral powers of `z` on `G±`.
pub fn bp_spectral_flow_field(voa: &Voa, k: &RatFunc, ell: HalfInt, gen: usize) -> Option<ShiftedField<PbwMonomial>> {
    let l = RatFunc::from_rational(ell.to_rational());
    let x = voa.gen_state(gen);
    let vac = voa.vacuum_state();
    let kp = kappa(k);
    Some(match gen {
        GP | GM => {
            let s = ell.to_int()?;
            ShiftedField::of(x).shift(if gen == GP { -s } else { s })
        }
        J => ShiftedField::of(x).plus(-1, &vac.scale(&-(kp * l))),
        L => {
            let c = (kp * l.clone() * (l.clone() + RatFunc::one())).scale(&rat(1, 2));
            ShiftedField::of(x)
                .plus(-1, &voa.gen_state(J).scale(&-l))
                .plus(-2, &vac.scale(&c))
        }
        _ => panic!("BP has four generators"),
    })
}

/// Conjugation: `G+ ↦ z^{-1} G-`, `G- ↦ -z G+`, `J ↦ -J - (2k+3)/3 z^{-1}`,
/// `L ↦ L - ∂J + J z^{-1} + (2k+3)/3 z^{-2}`. Its square fixes `J` and `L`
/// and negates `G±`.
pub fn conjugation_field(voa: &Voa, k: &RatFunc, gen: usize) -> ShiftedField<PbwMonomial> {
    let vac = voa.vacuum_state();
    let j = voa.gen_state(J);
    match gen {
        GP => ShiftedField::of(voa.gen_state(GM)).shift(-1),
        GM => ShiftedField::of(voa.gen_state(GP).neg()).shift(1),
        J => ShiftedField::of(j.neg()).plus(-1, &vac.scale(&-kappa(k))),
        L => ShiftedField::of(voa.gen_state(L).sub(&voa.derivative(&j)))
            .plus(-1, &j)
            .plus(-2, &vac.scale(&kappa(k))),
        _ => panic!("BP has four generators"),
    }
}

/// Composes field transformations given on generators: `(τ ∘ σ)(X) = τ(σ(X))`
/// where `τ` acts on every `z^s Y(X_s, z)` through the generators of `X_s`.
/// Only generator-linear components are supported.
pub fn compose_fields(
    first: &ShiftedField<PbwMonomial>,
    then: impl Fn(usize) -> ShiftedField<PbwMonomial>,
    voa: &Voa,
) -> ShiftedField<PbwMonomial> {
    let mut out = ShiftedField::zero();
    for (s, x) in first.terms() {
        for (m, c) in x.iter() {
            let piece = if m.is_empty() {
                ShiftedField::of(voa.vacuum_state())
            } else if m.modes().len() == 1 && m.modes()[0].index == -1 {
                then(m.modes()[0].gen)
            } else if m.modes().len() == 1 && m.modes()[0].index == -2 {
                // ∂ of a transformed field: ∂(z^t Y(Y_t)) = t z^{t-1} Y(Y_t) + z^t Y(∂Y_t)
                let f = then(m.modes()[0].gen);
                let mut d = ShiftedField::zero();
                for (t, y) in f.terms() {
                    d = d
                        .plus(t - 1, &y.scale(&RatFunc::from_int(t)))
                        .plus(t, &voa.derivative(y));
                }
                d
            } else {
                panic!("composition supports generator-linear fields only: {m:?}");
            };
            out = out.add(&piece.scale(c).shift(s));
        }
    }
    out
}

/// The action of BP on itself twisted by `σ^ℓ`.
pub fn bp_spectral_flow<'a>(voa: &'a Voa, k: &RatFunc, ell: i64) -> Twisted<'a, Voa> {
    let k = k.clone();
    Twisted::new(voa, move |g| {
        bp_spectral_flow_field(voa, &k, HalfInt::from_int(ell), generator_of(g)).expect("integral flow")
    })
}

/// The action of BP on itself twisted by conjugation.
pub fn conjugation<'a>(voa: &'a Voa, k: &RatFunc) -> Twisted<'a, Voa> {
    let k = k.clone();
    Twisted::new(voa, move |g| conjugation_field(voa, &k, generator_of(g)))
}

/// The generator states of `voa`.
pub fn generator_states(voa: &Voa) -> Vec<State> {
    (0..voa.table().generators().len()).map(|g| voa.gen_state(g)).collect()
}
