use serde::Serialize;

use super::{Realisation, Tensor, TensorKey, TensorState};
use crate::algebra::VertexModule;
use crate::error::{Error, Result};
use crate::lattice::{ExpGround, LatticeKey};
use crate::partition::Partition;
use crate::repr::bp_spectral_flow_field;
use crate::voa::PbwMonomial;
use crate::weight::HalfInt;

#[derive(Debug, Clone, Serialize)]
pub struct CompatCheck {
    pub ell: i64,
    pub generator: String,
    pub checked: usize,
    pub failures: usize,
    pub pass: bool,
}

fn test_vectors(r: &Realisation) -> Vec<TensorKey> {
    let left: Vec<PbwMonomial> = std::iter::once(PbwMonomial::empty())
        .chain(r.left().gen_state(0).keys().cloned())
        .collect();
    let lambda = bpvoa_exact::RatFunc::var(bpvoa_exact::Var::Lambda);
    let right = [
        LatticeKey::vacuum(),
        LatticeKey::ground(ExpGround::lattice(1)),
        LatticeKey::ground(ExpGround::lattice(-1)),
        LatticeKey::new(Partition::new(vec![1]), Partition::empty(), ExpGround::zero()),
        LatticeKey::ground(ExpGround::relaxed(lambda)),
    ];
    left.iter()
        .flat_map(|u| right.iter().map(move |v| (u.clone(), v.clone())))
        .collect()
}

/// Checks `φ ∘ σ^ℓ_BP = (id ⊗ σ^ℓ_Π) ∘ φ` on the modes of every generator:
/// `Σ_s φ(X_s)_(n+s)` against `φ(X)_(n)` acting through the flowed Π action,
/// on a set of tensor vectors and `n ∈ -2..=2`.
pub fn spectral_flow_compat(r: &Realisation, ell: i64) -> Result<Vec<CompatCheck>> {
    if r.is_critical() {
        return Err(Error::Invalid("spectral-flow compatibility is checked away from k = -3".into()));
    }
    let k = r.pi().level().clone();
    let flowed = r.pi().spectral_flow(ell);
    let twisted = Tensor::new(&**r.left(), &flowed);
    let plain = r.tensor();
    let vectors = test_vectors(r);
    let mut out = Vec::new();
    for (g, gen) in r.source().table().generators().iter().enumerate() {
        let field = bp_spectral_flow_field(r.source(), &k, HalfInt::from_int(ell), g).expect("integral ℓ");
        let image = r.images().get(g);
        let mut checked = 0;
        let mut failures = 0;
        for v in &vectors {
            let v1 = TensorState::single(v.clone());
            for n in -2..=2 {
                let mut a = TensorState::zero();
                for (x, m) in field.modes(n) {
                    a = a.add(&plain.act_combo(&r.phi(x), m, &v1));
                }
                let b = twisted.act_combo(image, n, &v1);
                checked += 1;
                failures += usize::from(a != b);
            }
        }
        out.push(CompatCheck {
            ell,
            generator: gen.name.clone(),
            checked,
            failures,
            pass: failures == 0,
        });
    }
    Ok(out)
}
