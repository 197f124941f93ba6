//! Closed-form mode commutators of the BP algebra in the weight-shifted
//! convention `A_n = A_(n+Δ_A-1)`, checked against the engine.

use bpvoa_exact::{RatFunc, Var};

use crate::presentations::{bp, GM, GP, J, L};
use crate::voa::{Mode, PbwMonomial, State, Voa};
use crate::weight::HalfInt;

/// `A_n` for a generator of the BP table.
pub fn shifted(voa: &Voa, gen: usize, n: i64) -> Mode {
    let w = voa.table().weight(gen);
    Mode::new(gen, n + w.floor() - 1)
}

fn k() -> RatFunc {
    RatFunc::var(Var::K)
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

fn kappa() -> RatFunc {
    (int(2) * k() + int(3)).scale(&bpvoa_exact::rat(1, 3))
}

/// One relation `[A_m, B_n] = rhs` with the right-hand side applied to a vector.
pub struct Relation {
    pub name: &'static str,
    pub a: usize,
    pub b: usize,
    rhs: fn(&Voa, i64, i64, &State) -> State,
}

fn delta(m: i64, n: i64) -> bool {
    m + n == 0
}

fn mode(voa: &Voa, gen: usize, n: i64, v: &State) -> State {
    voa.apply_mode(shifted(voa, gen, n), v)
}

fn central(m: i64, n: i64, c: RatFunc, v: &State) -> State {
    if delta(m, n) {
        v.scale(&c)
    } else {
        State::zero()
    }
}

/// `:JJ:_p`.
fn jj_mode(voa: &Voa, p: i64, v: &State) -> State {
    let jj = State::single(PbwMonomial(vec![Mode::new(J, -1), Mode::new(J, -1)]));
    voa.nth_product(&jj, p + 1, v)
}

/// The relations as printed for the BP mode algebra, except that the central
/// term of `[L_m, J_n]` is written as `-(2k+3)/3 (n^2-n)/2`; see
/// [`lj_printed_central_term`].
pub fn bp_relations() -> Vec<Relation> {
    vec![
        Relation {
            name: "[J_m,J_n] = (2k+3)/3 m δ",
            a: J,
            b: J,
            rhs: |_, m, n, x| central(m, n, kappa() * int(m), x),
        },
        Relation {
            name: "[J_m,G+_n] = G+_{m+n}",
            a: J,
            b: GP,
            rhs: |v, m, n, x| mode(v, GP, m + n, x),
        },
        Relation {
            name: "[J_m,G-_n] = -G-_{m+n}",
            a: J,
            b: GM,
            rhs: |v, m, n, x| mode(v, GM, m + n, x).neg(),
        },
        Relation {
            name: "[L_m,G+_n] = -n G+_{m+n}",
            a: L,
            b: GP,
            rhs: |v, m, n, x| mode(v, GP, m + n, x).scale(&int(-n)),
        },
        Relation {
            name: "[L_m,G-_n] = (m-n) G-_{m+n}",
            a: L,
            b: GM,
            rhs: |v, m, n, x| mode(v, GM, m + n, x).scale(&int(m - n)),
        },
        Relation {
            name: "[L_m,J_n] = -n J_{m+n} - (2k+3)/3 (n^2-n)/2 δ",
            a: L,
            b: J,
            rhs: |v, m, n, x| {
                let c = -(kappa() * int(n * n - n)).scale(&bpvoa_exact::rat(1, 2));
                mode(v, J, m + n, x).scale(&int(-n)).add(&central(m, n, c, x))
            },
        },
        Relation {
            name: "[G+_m,G+_n] = 0",
            a: GP,
            b: GP,
            rhs: |_, _, _, _| State::zero(),
        },
        Relation {
            name: "[G-_m,G-_n] = 0",
            a: GM,
            b: GM,
            rhs: |_, _, _, _| State::zero(),
        },
        Relation {
            name: "[L_m,L_n] = (m-n) L_{m+n} - (2k+3)(k+1)/(k+3) (m^3-m)/3 δ",
            a: L,
            b: L,
            rhs: |v, m, n, x| {
                let c: RatFunc = "-(2k+3)(k+1)/(k+3)/3".parse().expect("literal");
                mode(v, L, m + n, x)
                    .scale(&int(m - n))
                    .add(&central(m, n, c * int(m * m * m - m), x))
            },
        },
        Relation {
            name: "[G+_m,G-_n] = 3:JJ:_{m+n} - (k+3) L_{m+n} + (km-(2k+3)(n+1)) J_{m+n} + (k+1)(2k+3)(m^2-m)/2 δ",
            a: GP,
            b: GM,
            rhs: |v, m, n, x| {
                let mut out = jj_mode(v, m + n, x).scale(&int(3));
                out.add_scaled(&mode(v, L, m + n, x), &-(k() + int(3)));
                let cj = k() * int(m) - (int(2) * k() + int(3)) * int(n + 1);
                out.add_scaled(&mode(v, J, m + n, x), &cj);
                let c = ((k() + int(1)) * (int(2) * k() + int(3)) * int(m * m - m))
                    .scale(&bpvoa_exact::rat(1, 2));
                out.add(&central(m, n, c, x))
            },
        },
    ]
}

/// The central term of `[L_m, J_{-m}]` in the form `-(2k+3)/3 (m^2-m)/2`.
pub fn lj_printed_central_term(m: i64) -> RatFunc {
    -(kappa() * int(m * m - m)).scale(&bpvoa_exact::rat(1, 2))
}

/// The central term of `[L_m, J_{-m}]` computed by the engine on the vacuum.
pub fn lj_engine_central_term(m: i64) -> RatFunc {
    let voa = bp();
    let vac = voa.vacuum_state();
    let lhs = commutator_on(&voa, L, m, J, -m, &vac);
    // the J_0 term vanishes on the vacuum
    lhs.coeff(&PbwMonomial::empty())
}

/// `A_m B_n v - B_n A_m v`, using generator modes only.
pub fn commutator_on(voa: &Voa, a: usize, m: i64, b: usize, n: i64, v: &State) -> State {
    let ab = mode(voa, a, m, &mode(voa, b, n, v));
    let ba = mode(voa, b, n, &mode(voa, a, m, v));
    ab.sub(&ba)
}

pub struct RelationCheck {
    pub name: &'static str,
    pub m: i64,
    pub n: i64,
    pub holds: bool,
}

/// Checks every relation for `m, n` in the range on all vacuum-module PBW
/// vectors up to `max_weight`.
pub fn check_relations(range: std::ops::RangeInclusive<i64>, max_weight: i64) -> Vec<RelationCheck> {
    let voa = bp();
    let vectors: Vec<State> = (0..=max_weight)
        .flat_map(|w| voa.pbw_basis(HalfInt::from_int(w)))
        .map(State::single)
        .collect();
    let mut out = Vec::new();
    for rel in bp_relations() {
        for m in range.clone() {
            for n in range.clone() {
                let holds = vectors.iter().all(|x| {
                    commutator_on(&voa, rel.a, m, rel.b, n, x) == (rel.rhs)(&voa, m, n, x)
                });
                out.push(RelationCheck {
                    name: rel.name,
                    m,
                    n,
                    holds,
                });
            }
        }
    }
    out
}
