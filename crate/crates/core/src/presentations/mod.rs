//! The bundled OPE tables and level predicates for the Bershadsky–Polyakov algebra.

use std::sync::{Arc, OnceLock};

use bpvoa_exact::{rat, RatFunc, Rational, Var};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::voa::{Mode, OpeTable, PbwMonomial, State, Voa};

pub mod relations;

pub const BP_TABLE: &str = include_str!("tables/bp.ope");
pub const ZAM_TABLE: &str = include_str!("tables/zam.ope");
pub const BP_CRITICAL_TABLE: &str = include_str!("tables/bp-critical.ope");
/// The commutative centre at the critical level, generated by `S2` and `S3`.
pub const CENTRE_TABLE: &str = include_str!("tables/centre.ope");

/// Generator indices shared by the generic and critical BP tables.
pub const J: usize = 0;
pub const GP: usize = 1;
/// `L` in the generic table, `S` in the critical one.
pub const L: usize = 2;
pub const GM: usize = 3;

/// Zamolodchikov generators.
pub const T: usize = 0;
pub const W: usize = 1;

fn load(slot: &'static OnceLock<Arc<Voa>>, text: &str) -> Arc<Voa> {
    slot.get_or_init(|| {
        let table = OpeTable::parse(text).expect("bundled table parses");
        Voa::new(table).expect("bundled table is valid")
    })
    .clone()
}

/// The universal BP algebra with symbolic `k`.
pub fn bp() -> Arc<Voa> {
    static S: OnceLock<Arc<Voa>> = OnceLock::new();
    load(&S, BP_TABLE)
}

/// The universal Zamolodchikov algebra with symbolic `k`.
pub fn zam() -> Arc<Voa> {
    static S: OnceLock<Arc<Voa>> = OnceLock::new();
    load(&S, ZAM_TABLE)
}

pub fn bp_critical() -> Arc<Voa> {
    static S: OnceLock<Arc<Voa>> = OnceLock::new();
    load(&S, BP_CRITICAL_TABLE)
}

pub fn centre() -> Arc<Voa> {
    static S: OnceLock<Arc<Voa>> = OnceLock::new();
    load(&S, CENTRE_TABLE)
}

/// Looks up a bundled table by its CLI name.
pub fn by_name(name: &str) -> Result<Arc<Voa>> {
    match name {
        "bp" => Ok(bp()),
        "zam" => Ok(zam()),
        "bp-critical" => Ok(bp_critical()),
        "centre" | "center" => Ok(centre()),
        _ => Err(Error::Invalid(format!("unknown algebra `{name}`"))),
    }
}

pub fn critical_level() -> Rational {
    Rational::from_integer((-3).into())
}

/// A table specialised to `k`; the BP table at `k = -3` is the critical one.
pub enum Presentation {
    Generic(Arc<Voa>),
    Critical(Arc<Voa>),
}

impl Presentation {
    pub fn voa(&self) -> &Arc<Voa> {
        match self {
            Presentation::Generic(v) | Presentation::Critical(v) => v,
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!(self, Presentation::Critical(_))
    }
}

pub fn bp_at(k: &Rational) -> Result<Presentation> {
    if *k == critical_level() {
        return Ok(Presentation::Critical(bp_critical()));
    }
    let table = bp().table().specialize(&[(Var::K, k.clone())])?;
    Ok(Presentation::Generic(Voa::new(table)?))
}

pub fn zam_at(k: &Rational) -> Result<Arc<Voa>> {
    if *k == critical_level() {
        return Err(Error::CriticalLevel);
    }
    Voa::new(zam().table().specialize(&[(Var::K, k.clone())])?)
}

fn k() -> RatFunc {
    RatFunc::var(Var::K)
}

/// `c^BP_k = -4(k+1)(2k+3)/(k+3)`.
pub fn c_bp() -> RatFunc {
    bp().table().central_charge().cloned().expect("bp is conformal")
}

/// `c^Z_k = -2(3k+5)(4k+9)/(k+3)`.
pub fn c_zam() -> RatFunc {
    zam().table().central_charge().cloned().expect("zam is conformal")
}

/// `c^Π_k = 2 + 8(2k+3)`.
pub fn c_pi() -> RatFunc {
    RatFunc::from_int(2) + RatFunc::from_int(8) * (RatFunc::from_int(2) * k() + RatFunc::from_int(3))
}

/// `c^BP_k = c^Z_k + c^Π_k` as rational functions of `k`.
pub fn central_charge_identity() -> bool {
    c_bp() == c_zam() + c_pi()
}

/// `A = -(k+3)^2 (3k+4)(5k+12)/6`.
pub fn zam_a() -> RatFunc {
    "-(k+3)^2*(3*k+4)*(5*k+12)/6".parse().expect("literal")
}

/// `(G+_(-1))^n |0>`.
pub fn gplus_power(n: usize) -> State {
    State::single(PbwMonomial(vec![Mode::new(GP, -1); n]))
}

/// The scalar `x` with `G-_1 (G+_{-1})^n |0> = x (G+_{-1})^(n-1) |0>`, computed
/// by the engine over the given BP table.
pub fn singular_vector_coefficient_in(voa: &Voa, n: usize) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let image = voa.apply_mode(Mode::new(GM, 2), &gplus_power(n));
    let target = PbwMonomial(vec![Mode::new(GP, -1); n - 1]);
    let c = image.coeff(&target);
    if image.len() > usize::from(!c.is_zero()) {
        return Err(Error::State(format!(
            "G-_1 (G+_-1)^{n} |0> is not proportional to (G+_-1)^{} |0>",
            n - 1
        )));
    }
    Ok(c)
}

pub fn singular_vector_coefficient(n: usize) -> Result<RatFunc> {
    singular_vector_coefficient_in(&bp(), n)
}

/// `-n (n-k-2)(n-2k-4)`.
pub fn singular_vector_closed_form(n: usize) -> RatFunc {
    let n = RatFunc::from_int(n as i64);
    let two = RatFunc::from_int(2);
    let four = RatFunc::from_int(4);
    -(n.clone() * (n.clone() - k() - two.clone()) * (n - two * k() - four))
}

/// Whether `J_m`, `L_m`, `G-_{m+1}` and `G+_{m-1}` annihilate `(G+_{-1})^n |0>`
/// for every `m > 0`. Modes beyond the weight of the vector act by zero, so
/// finitely many checks suffice.
pub fn annihilated_by_positive_modes(voa: &Voa, n: usize) -> bool {
    let v = gplus_power(n);
    let top = n as i64 + 2;
    (1..=top).all(|m| {
        [
            Mode::new(J, m),
            Mode::new(L, m + 1),
            Mode::new(GM, m + 2),
            Mode::new(GP, m - 1),
        ]
        .iter()
        .all(|&md| voa.apply_mode(md, &v).is_zero())
    })
}

/// `(G+_{-1})^n |0>` is singular at level `k`, decided by the engine.
pub fn is_singular_vector(n: usize, k: &Rational) -> Result<bool> {
    let pres = bp_at(k)?;
    if pres.is_critical() {
        return Err(Error::CriticalLevel);
    }
    let voa = pres.voa();
    Ok(singular_vector_coefficient_in(voa, n)?.is_zero() && annihilated_by_positive_modes(voa, n))
}

/// The closed-form criterion: `n = k+2` with `k ∈ {-1, 0, 1, ...}` or
/// `n = 2(k+2)` with `k ∈ {-3/2, -1, -1/2, ...}`.
pub fn is_singular_vector_predicted(n: usize, k: &Rational) -> bool {
    let n = Rational::from_integer(BigInt::from(n));
    let two = rat(2, 1);
    let kp2 = k + &two;
    let first = n == kp2 && k.is_integer() && *k >= rat(-1, 1);
    let second = n == &two * &kp2 && (k * &two).is_integer() && *k >= rat(-3, 2);
    first || second
}

/// `false` iff `k+3 = p'/p` in lowest terms with `p ≥ 1`, `p' ≥ 2`.
pub fn universal_bp_is_simple(k: &Rational) -> Result<bool> {
    if *k == critical_level() {
        return Err(Error::CriticalLevel);
    }
    let t = k + Rational::from_integer(3.into());
    Ok(!(t.numer() >= &BigInt::from(2)))
}

/// The simple quotient embeds into the simple Zamolodchikov algebra tensor Π
/// iff `2k+3 ∉ {0, 1, 2, ...}`.
pub fn simple_embedding_exists(k: &Rational) -> Result<bool> {
    if *k == critical_level() {
        return Err(Error::CriticalLevel);
    }
    let v = k * rat(2, 1) + rat(3, 1);
    Ok(!(v.is_integer() && !v.is_negative()))
}

/// `L~ = L - (1/2) ∂J`, the conformal vector giving `G+` and `G-` weight 3/2.
pub fn shifted_conformal_vector() -> State {
    let voa = bp();
    let l = voa.gen_state(L);
    let dj = voa.derivative(&voa.gen_state(J));
    l.sub(&dj.scale_rational(&rat(1, 2)))
}

#[cfg(test)]
mod tests;
