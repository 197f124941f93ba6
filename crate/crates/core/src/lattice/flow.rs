//! Spectral flow `σ^ℓ` of Π on the generating fields.

use bpvoa_exact::{rat, RatFunc};

use super::{ExpGround, HeisVector, LatticeKey, LatticeState, Pi};
use crate::algebra::ModeAction;
use crate::algebra::Decomposition;
use crate::error::{Error, Result};
use crate::fields::{ShiftedField, Twisted};
use crate::weight::HalfInt;

impl Pi {
    /// The constant `s` in `σ^ℓ(h(z)) = h(z) + s z^{-1}`, from
    /// `a(z) ↦ a(z) - (k+3)/3 ℓ z^{-1}` and `b(z) ↦ b(z) - k/3 ℓ z^{-1}`.
    pub fn flow_shift(&self, ell: HalfInt, h: &HeisVector) -> RatFunc {
        let l = RatFunc::from_rational(ell.to_rational());
        let k = self.level().clone();
        let sa = (k.clone() + RatFunc::from_int(3)).scale(&rat(1, 3));
        let sb = k.scale(&rat(1, 3));
        -(l * (&h.alpha * &sa + &h.beta * &sb))
    }

    /// `σ^ℓ` of the field of `h_(-1) e^0` or `e^{nc}`. For half-integer `ℓ`
    /// only the Heisenberg fields and the even exponentials stay untwisted.
    pub fn spectral_flow_field(&self, ell: HalfInt, g: &LatticeKey) -> Result<ShiftedField<LatticeKey>> {
        let vac = LatticeState::single(LatticeKey::vacuum());
        match ModeAction::decompose(self, g) {
            Decomposition::Mode { generator, index: -1, rest } if rest == LatticeKey::vacuum() => {
                let (x, y) = if generator.j.is_empty() {
                    (RatFunc::zero(), RatFunc::one())
                } else {
                    (RatFunc::one(), RatFunc::zero())
                };
                let h = self.from_jc(&x, &y);
                let s = self.flow_shift(ell, &h);
                Ok(ShiftedField::of(LatticeState::single(g.clone())).plus(-1, &vac.scale(&s)))
            }
            Decomposition::Atom(a) => {
                let n = a
                    .exp
                    .lattice_point()
                    .ok_or_else(|| Error::Invalid("not a field of Π".into()))?;
                let twice = -ell.twice() * n;
                if twice % 2 != 0 {
                    return Err(Error::TwistedSector(HalfInt::from_twice(twice).to_string()));
                }
                Ok(ShiftedField::of(LatticeState::single(a)).shift(twice / 2))
            }
            Decomposition::Vacuum => Ok(ShiftedField::of(vac)),
            _ => Err(Error::Invalid("spectral flow is given on generating fields only".into())),
        }
    }

    /// The action of Π on itself twisted by `σ^ℓ`, `ℓ ∈ ℤ`.
    pub fn spectral_flow(&self, ell: i64) -> Twisted<'_, Pi> {
        let l = HalfInt::from_int(ell);
        Twisted::new(self, move |g| {
            self.spectral_flow_field(l, g).expect("integral flow of a generating field")
        })
    }
}

/// `σ^ℓ(Π_r(λ)) ≅ Π_{r+ℓ}(λ)`.
pub fn flow_module(ell: HalfInt, ground: &ExpGround) -> ExpGround {
    ExpGround::new(ground.r + ell, ground.mu.clone())
}
