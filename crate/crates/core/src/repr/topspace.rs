//! Engine evaluation of the BP zero modes on the top space of `R_{M,λ}`.

use bpvoa_exact::RatFunc;
use serde::Serialize;

use super::HwData;
use crate::algebra::VertexModule;
use crate::combo::Combo;
use crate::lattice::{ExpGround, LatticeKey};
use crate::presentations::{GM, GP, J, L, T, W};
use crate::realisation::{tensor, Realisation, Tensor, TensorState};
use crate::voa::{HwGround, PbwMonomial, State};

/// The six contributions to `G-_0 (u ⊗ e^{-j+xc}) = g · u ⊗ e^{-j+(x-1)c}`
/// from the summands of the image of `G-`, before the level-dependent
/// coefficients are applied.
#[derive(Debug, Clone, Serialize)]
pub struct GMinusComponents {
    pub w: String,
    pub t_i: String,
    pub dt: String,
    pub i_cubed: String,
    pub i_i2: String,
    pub i3: String,
    /// The full coefficient from the image of `G-`.
    pub total: String,
    #[serde(skip)]
    pub values: [RatFunc; 6],
    #[serde(skip)]
    pub total_value: RatFunc,
}

fn relaxed_top(x: &RatFunc) -> LatticeKey {
    LatticeKey::ground(ExpGround::relaxed(x.clone()))
}

/// Acts with `a_(n)` on `u ⊗ e^{-j+xc}` where `u` spans the top of the module
/// of highest weight `hw`, returning the coefficient of `u ⊗ e^{-j+(x+shift)c}`
/// and checking that nothing else appears.
fn top_coefficient(r: &Realisation, hw: &HwData, a: &TensorState, n: i64, x: &RatFunc, shift: i64) -> Option<RatFunc> {
    let module = r.left().module(HwGround {
        eigenvalues: vec![hw.delta.clone(), hw.w.clone()],
        top_only: false,
    });
    let t = Tensor::new(&module, &**r.pi());
    let v = Combo::single((PbwMonomial::empty(), relaxed_top(x)));
    let out = t.act_combo(a, n, &v);
    let target = (PbwMonomial::empty(), relaxed_top(&(x.clone() + RatFunc::from_int(shift))));
    let c = out.coeff(&target);
    (out.len() <= 1 && (out.is_zero() || !c.is_zero())).then_some(c)
}

/// The six summands of `φ(G-)`, with unit coefficients.
fn gminus_summands(r: &Realisation) -> [TensorState; 6] {
    let zam = r.left();
    let pi = r.pi();
    let em = pi.ground_state(ExpGround::lattice(-1));
    let i = pi.i();
    let im = |v: &crate::lattice::LatticeState, n: i64| pi.h_mode(&i, -n, v);
    let vac = State::single(PbwMonomial::empty());
    [
        tensor(&zam.gen_state(W), &em),
        tensor(&zam.gen_state(T), &im(&em, 1)),
        tensor(&zam.derivative(&zam.gen_state(T)), &em),
        tensor(&vac, &im(&im(&im(&em, 1), 1), 1)),
        tensor(&vac, &im(&im(&em, 1), 2)),
        tensor(&vac, &im(&em, 3)),
    ]
}

/// `G-_0` on `u ⊗ e^{-j+xc}`, summand by summand, for generic `k`.
pub fn gminus0_components(r: &Realisation, hw: &HwData, x: &RatFunc) -> Option<GMinusComponents> {
    if r.is_critical() {
        return None;
    }
    let parts = gminus_summands(r);
    let mut values: Vec<RatFunc> = Vec::new();
    for p in &parts {
        values.push(top_coefficient(r, hw, p, 1, x, -1)?);
    }
    let total_value = top_coefficient(r, hw, r.images().get(GM), 1, x, -1)?;
    let values: [RatFunc; 6] = values.try_into().ok()?;
    Some(GMinusComponents {
        w: values[0].to_string(),
        t_i: values[1].to_string(),
        dt: values[2].to_string(),
        i_cubed: values[3].to_string(),
        i_i2: values[4].to_string(),
        i3: values[5].to_string(),
        total: total_value.to_string(),
        values,
        total_value,
    })
}

/// `G+_0` on `u ⊗ e^{-j+xc}`: the coefficient of `u ⊗ e^{-j+(x+1)c}`.
pub fn gplus0_engine(r: &Realisation, hw: &HwData, x: &RatFunc) -> Option<RatFunc> {
    top_coefficient(r, hw, r.images().get(GP), 0, x, 1)
}

/// `(J_0, L_0)` eigenvalues on `u ⊗ e^{-j+xc}` computed through `φ`.
pub fn top_weights_engine(r: &Realisation, hw: &HwData, x: &RatFunc) -> Option<(RatFunc, RatFunc)> {
    Some((
        top_coefficient(r, hw, r.images().get(J), 0, x, 0)?,
        top_coefficient(r, hw, r.images().get(L), 1, x, 0)?,
    ))
}
