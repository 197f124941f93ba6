//! The embedding `φ: BP → Zam ⊗ Π` and its critical-level analogue
//! `BP⁻³ → Z ⊗ Π`, with checks of the homomorphism property, injectivity in
//! low weight and compatibility with spectral flow.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use bpvoa_exact::{parse_rational, rat, RatFunc, Rational};
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::VertexModule;
use crate::combo::Combo;
use crate::error::{Error, Result};
use crate::lattice::{ExpGround, LatticeKey, LatticeState, Pi};
use crate::presentations::{self, GM, GP, J, L, T, W};
use crate::voa::table::coeff_prefix;
use crate::voa::{PbwMonomial, State, Voa};

mod flow;
mod injectivity;
mod tensor;

pub use flow::{spectral_flow_compat, CompatCheck};
pub use injectivity::{verify_injectivity, InjectivityReport, WeightCheck};
pub use tensor::{tensor, Tensor};

/// Basis of `Zam ⊗ Π` (or `Z ⊗ Π` at the critical level).
pub type TensorKey = (PbwMonomial, LatticeKey);
pub type TensorState = Combo<TensorKey>;

/// Which level to work at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level {
    Symbolic,
    At(Rational),
    Critical,
}

impl Level {
    /// `-3` becomes [`Level::Critical`].
    pub fn at(k: Rational) -> Level {
        if k == presentations::critical_level() {
            Level::Critical
        } else {
            Level::At(k)
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s.trim() {
            "k" | "symbolic" => Ok(Level::Symbolic),
            "critical" => Ok(Level::Critical),
            other => Ok(Level::at(parse_rational(other)?)),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Symbolic => write!(f, "k"),
            Level::At(k) => write!(f, "{k}"),
            Level::Critical => write!(f, "critical"),
        }
    }
}

/// The images of the four BP generators, indexed like the BP table.
#[derive(Debug, Clone)]
pub struct PhiImage {
    pub images: Vec<TensorState>,
}

impl PhiImage {
    pub fn get(&self, gen: usize) -> &TensorState {
        &self.images[gen]
    }
}

pub struct Realisation {
    level: Level,
    source: Arc<Voa>,
    left: Arc<Voa>,
    pi: Arc<Pi>,
    images: PhiImage,
    cache: RwLock<HashMap<PbwMonomial, TensorState>>,
}

fn lat(x: &LatticeState) -> TensorState {
    tensor(&State::single(PbwMonomial::empty()), x)
}

fn left_only(x: &State) -> TensorState {
    tensor(x, &LatticeState::single(LatticeKey::vacuum()))
}

impl Realisation {
    pub fn new(level: &Level) -> Result<Realisation> {
        let (source, left, pi) = match level {
            Level::Symbolic => (presentations::bp(), presentations::zam(), Pi::symbolic()),
            Level::At(k) => {
                let pres = presentations::bp_at(k)?;
                if pres.is_critical() {
                    return Realisation::new(&Level::Critical);
                }
                (pres.voa().clone(), presentations::zam_at(k)?, Pi::at(k))
            }
            Level::Critical => (
                presentations::bp_critical(),
                presentations::centre(),
                Pi::at(&presentations::critical_level()),
            ),
        };
        let images = match level {
            Level::Critical => critical_images(&left, &pi),
            _ => generic_images(&left, &pi),
        };
        Ok(Realisation {
            level: level.clone(),
            source,
            left,
            pi,
            images,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn symbolic() -> Realisation {
        Realisation::new(&Level::Symbolic).expect("symbolic level")
    }

    pub fn critical() -> Realisation {
        Realisation::new(&Level::Critical).expect("critical level")
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn is_critical(&self) -> bool {
        self.level == Level::Critical
    }

    pub fn source(&self) -> &Arc<Voa> {
        &self.source
    }

    pub fn left(&self) -> &Arc<Voa> {
        &self.left
    }

    pub fn pi(&self) -> &Arc<Pi> {
        &self.pi
    }

    pub fn images(&self) -> &PhiImage {
        &self.images
    }

    pub fn tensor(&self) -> Tensor<'_, Voa, Pi> {
        Tensor::new(&*self.left, &*self.pi)
    }

    /// `A_(n) B` in the tensor product.
    pub fn nth_product(&self, a: &TensorState, n: i64, b: &TensorState) -> TensorState {
        self.tensor().act_combo(a, n, b)
    }

    fn phi_monomial(&self, m: &PbwMonomial) -> TensorState {
        if m.is_empty() {
            return TensorState::single((PbwMonomial::empty(), LatticeKey::vacuum()));
        }
        if let Some(hit) = self.cache.read().get(m) {
            return hit.clone();
        }
        let first = m.modes()[0];
        let rest = self.phi_monomial(&m.rest());
        let out = self.nth_product(self.images.get(first.gen), first.index, &rest);
        self.cache.write().insert(m.clone(), out.clone());
        out
    }

    /// The multiplicative extension of the generator images.
    pub fn phi(&self, a: &State) -> TensorState {
        let mut out = TensorState::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.phi_monomial(m), c);
        }
        out
    }

    pub fn render(&self, s: &TensorState) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = s
            .iter()
            .map(|((m, k), c)| {
                let l = self.left.render(&State::single(m.clone()));
                let r = self.pi.render(&LatticeState::single(k.clone()));
                format!("{}{l} ⊗ {r}", coeff_prefix(c))
            })
            .collect();
        terms.join(" + ")
    }

    /// Compares `φ(X)_(j) φ(Y)` with `φ(X_(j) Y)` for every ordered pair of
    /// generators and every `j ≥ 0` up to the larger of the two pole orders.
    pub fn verify_homomorphism(&self) -> HomReport {
        let n = self.source.table().generators().len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let checks: Vec<Vec<HomCheck>> = pairs
            .par_iter()
            .map(|&(a, b)| self.check_pair(a, b))
            .collect();
        HomReport {
            level: self.level.to_string(),
            checks: checks.into_iter().flatten().collect(),
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Vec<HomCheck> {
        let gens = self.source.table().generators();
        let (xa, xb) = (self.source.gen_state(a), self.source.gen_state(b));
        let (ia, ib) = (self.images.get(a), self.images.get(b));
        let source_top = self.source.max_index_combo(&xa, &xb).unwrap_or(-1);
        let tensor_top = self.tensor().max_index_combo(ia, ib).unwrap_or(-1);
        let mut out = Vec::new();
        for j in 0..=source_top.max(tensor_top) {
            let expected = self.phi(&self.source.nth_product(&xa, j, &xb));
            let computed = self.nth_product(ia, j, ib);
            if j > source_top && computed.is_zero() {
                continue;
            }
            out.push(HomCheck {
                pair: (gens[a].name.clone(), gens[b].name.clone()),
                j,
                pole_order: j + 1,
                pass: expected == computed,
                expected: self.render(&expected),
                computed: self.render(&computed),
            });
        }
        out
    }
}

/// `T ⊗ 𝟙 + 𝟙 ⊗ t` and friends for generic `k`.
fn generic_images(zam: &Arc<Voa>, pi: &Pi) -> PhiImage {
    let k = pi.level().clone();
    let int = RatFunc::from_int;
    let tt = zam.gen_state(T);
    let ww = zam.gen_state(W);
    let em = pi.ground_state(ExpGround::lattice(-1));
    let kp2 = k.clone() + int(2);
    let kp3 = k.clone() + int(3);
    let i = pi.i();
    let i1 = |v: &LatticeState, n: i64| pi.h_mode(&i, -n, v);
    // i(-1)^3 + 3(k+2) i(-2)i(-1) + 2(k+2)^2 i(-3), on e^{-c}
    let cubic = i1(&i1(&i1(&em, 1), 1), 1)
        .add(&i1(&i1(&em, 1), 2).scale(&(int(3) * kp2.clone())))
        .add(&i1(&em, 3).scale(&(int(2) * kp2.clone() * kp2.clone())));
    let w_part = ww.add(&zam.derivative(&tt).scale(&(kp2 * kp3.clone()).scale(&rat(1, 2))));
    let gm = tensor(&w_part, &em)
        .add(&tensor(&tt, &i1(&em, 1)).scale(&kp3))
        .sub(&lat(&cubic));
    let mut images = vec![TensorState::zero(); 4];
    images[J] = lat(&pi.heis_state(&pi.j()));
    images[GP] = lat(&pi.ground_state(ExpGround::lattice(1)));
    images[L] = left_only(&tt).add(&lat(&pi.conformal_vector()));
    images[GM] = gm;
    PhiImage { images }
}

/// `S ↦ S2 ⊗ 𝟙` and `G- ↦ (S3 - ½∂S2) ⊗ e^{-c} + S2 ⊗ i(-1)e^{-c} - 𝟙 ⊗ (...)e^{-c}`.
fn critical_images(centre: &Arc<Voa>, pi: &Pi) -> PhiImage {
    let int = RatFunc::from_int;
    let s2 = centre.gen_state(0);
    let s3 = centre.gen_state(1);
    let em = pi.ground_state(ExpGround::lattice(-1));
    let i = pi.i();
    let i1 = |v: &LatticeState, n: i64| pi.h_mode(&i, -n, v);
    let cubic = i1(&i1(&i1(&em, 1), 1), 1)
        .sub(&i1(&i1(&em, 1), 2).scale(&int(3)))
        .add(&i1(&em, 3).scale(&int(2)));
    let s_part = s3.sub(&centre.derivative(&s2).scale_rational(&rat(1, 2)));
    let gm = tensor(&s_part, &em)
        .add(&tensor(&s2, &i1(&em, 1)))
        .sub(&lat(&cubic));
    let mut images = vec![TensorState::zero(); 4];
    images[J] = lat(&pi.heis_state(&pi.j()));
    images[GP] = lat(&pi.ground_state(ExpGround::lattice(1)));
    images[L] = left_only(&s2);
    images[GM] = gm;
    PhiImage { images }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomCheck {
    pub pair: (String, String),
    pub j: i64,
    pub pole_order: i64,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomReport {
    pub level: String,
    pub checks: Vec<HomCheck>,
}

impl HomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
