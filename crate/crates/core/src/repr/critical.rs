//! Relaxed modules `L_{χ₂,χ₃} ⊗ Π_{-1}(λ)` at `k = -3`.

use bpvoa_exact::{RatFunc, Rational};
use num_traits::Zero;

use super::{classify_cubic, Classification, ComplexRat, Cubic, Status};
use crate::algebra::VertexModule;
use crate::combo::Combo;
use crate::error::Result;
use crate::lattice::{ExpGround, LatticeKey};
use crate::presentations::GM;
use crate::realisation::{Realisation, Tensor};
use crate::voa::{HwGround, PbwMonomial};

/// `g(x) = w + Δ + (Δ - 2)x - 3x² - x³`.
pub fn g_poly(delta: &RatFunc, w: &RatFunc) -> Cubic {
    Cubic {
        coeffs: [
            w.clone() + delta.clone(),
            delta.clone() - RatFunc::from_int(2),
            RatFunc::from_int(-3),
            RatFunc::from_int(-1),
        ],
    }
}

/// Irreducible when `g` has no root in `λ + ℤ`; otherwise undetermined.
pub fn classify_critical(delta: &Rational, w: &Rational, lambda: &ComplexRat) -> Result<Classification> {
    classify_cubic(&g_poly(&delta.clone().into(), &w.clone().into()), lambda, Status::Undetermined)
}

/// Coefficient of `u ⊗ e^{-j+(x-1)c}` in `G-_0 (u ⊗ e^{-j+xc})` on the one-dimensional
/// centre module with `S2_0 = Δ`, `S3_0 = w`.
pub fn critical_gminus0_engine(r: &Realisation, delta: &RatFunc, w: &RatFunc, x: &RatFunc) -> Option<RatFunc> {
    if !r.is_critical() {
        return None;
    }
    let module = r.left().module(HwGround {
        eigenvalues: vec![delta.clone(), w.clone()],
        top_only: true,
    });
    let t = Tensor::new(&module, &**r.pi());
    let v = Combo::single((PbwMonomial::empty(), LatticeKey::ground(ExpGround::relaxed(x.clone()))));
    let out = t.act_combo(r.images().get(GM), 1, &v);
    let target = (
        PbwMonomial::empty(),
        LatticeKey::ground(ExpGround::relaxed(x.clone() - RatFunc::one())),
    );
    let c = out.coeff(&target);
    (out.len() <= 1 && (out.is_zero() || !c.is_zero())).then_some(c)
}

/// `χ_m` given as `(n, χ_m(n))` pairs; gradable iff only `n = 0` is nonzero.
pub fn gradable_critical(chi2: &[(i64, Rational)], chi3: &[(i64, Rational)]) -> bool {
    chi2.iter().chain(chi3).all(|(n, v)| *n == 0 || v.is_zero())
}
