use bpvoa_exact::rat;

use super::relations::{check_relations, lj_engine_central_term, lj_printed_central_term};
use super::*;
use crate::algebra::divided_derivative;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

#[test]
fn bundled_tables_round_trip() {
    for text in [BP_TABLE, ZAM_TABLE, BP_CRITICAL_TABLE, CENTRE_TABLE] {
        let t = OpeTable::parse(text).unwrap();
        assert_eq!(t.render(), text);
        t.validate().unwrap();
    }
}

#[test]
fn bp_entries() {
    let v = bp();
    let s = |text: &str| v.parse_state(text).unwrap();
    let gp = v.gen_state(GP);
    let gm = v.gen_state(GM);
    assert_eq!(v.nth_product(&gp, 2, &gm), s("((k+1)*(2*k+3)) * |0>"));
    assert_eq!(v.nth_product(&gp, 1, &gm), s("(3*(k+1)) * J(-1) |0>"));
    let jj = v.nth_product(&v.gen_state(J), -1, &v.gen_state(J));
    let dj = v.derivative(&v.gen_state(J));
    let expected = jj
        .scale(&RatFunc::from_int(3))
        .add(&dj.scale(&rf("2k+3")))
        .sub(&v.gen_state(L).scale(&rf("k+3")));
    assert_eq!(v.nth_product(&gp, 0, &gm), expected);
    assert_eq!(c_bp(), rf("-4(k+1)(2k+3)/(k+3)"));
    let l = v.gen_state(L);
    assert_eq!(
        v.nth_product(&l, 3, &l),
        v.vacuum_state().scale(&c_bp().scale(&rat(1, 2)))
    );
}

#[test]
fn zam_entries_match_lambda_form() {
    let z = zam();
    let t = z.gen_state(T);
    let w = z.gen_state(W);
    let a = zam_a();
    let dt = |i| divided_derivative(&*z, &t, i);
    // ∂^i T = i! ∂^(i) T
    let d2t = dt(2).scale(&RatFunc::from_int(2));
    let d3t = dt(3).scale(&RatFunc::from_int(6));
    let lambda = z
        .nth_product(&t, -1, &t)
        .sub(&d2t.scale(&rf("3/10")));
    let k3 = rf("(k+3)^3/3");
    let ww = |j| z.nth_product(&w, j, &w);
    assert_eq!(ww(5), z.vacuum_state().scale(&(a.clone() * c_zam()).scale(&rat(1, 3))));
    assert!(ww(4).is_zero());
    assert_eq!(ww(3), t.scale(&(a.clone() * RatFunc::from_int(2))));
    assert_eq!(ww(2), z.derivative(&t).scale(&a));
    assert_eq!(
        ww(1),
        lambda.scale(&(k3.clone() * RatFunc::from_int(2))).add(&d2t.scale(&(a.clone() * rf("3/10"))))
    );
    assert_eq!(
        ww(0),
        z.derivative(&lambda).scale(&k3).add(&d3t.scale(&(a * rf("1/15"))))
    );
    assert_eq!(z.nth_product(&t, 3, &t), z.vacuum_state().scale(&c_zam().scale(&rat(1, 2))));
    assert_eq!(z.nth_product(&t, 1, &w), w.scale(&RatFunc::from_int(3)));
}

#[test]
fn critical_table() {
    let v = bp_critical();
    let s = v.gen_state(L);
    for x in 0..4 {
        let xs = v.gen_state(x);
        for j in 0..5 {
            assert!(v.nth_product(&s, j, &xs).is_zero());
            assert!(v.nth_product(&xs, j, &s).is_zero());
        }
    }
    let j = v.gen_state(J);
    assert_eq!(v.nth_product(&j, 1, &j), v.vacuum_state().scale(&RatFunc::from_int(-1)));
    let gp = v.gen_state(GP);
    let gm = v.gen_state(GM);
    assert_eq!(v.nth_product(&gp, 2, &gm), v.vacuum_state().scale(&RatFunc::from_int(6)));
    assert!(v.table().central_charge().is_none());
}

#[test]
fn critical_routing() {
    assert!(bp_at(&rat(-3, 1)).unwrap().is_critical());
    assert!(!bp_at(&rat(-9, 4)).unwrap().is_critical());
    assert!(matches!(zam_at(&rat(-3, 1)), Err(Error::CriticalLevel)));
    // the generic table has a pole at k = -3
    assert!(bp().table().specialize(&[(Var::K, rat(-3, 1))]).is_err());
}

#[test]
fn central_charges() {
    assert!(central_charge_identity());
    let at = |f: RatFunc, k| f.specialize(&[(Var::K, k)]).unwrap();
    assert_eq!(at(c_bp(), rat(-9, 4)), RatFunc::from_int(-10));
    assert_eq!(at(c_zam(), rat(-9, 4)) + at(c_pi(), rat(-9, 4)), RatFunc::from_int(-10));
    assert_eq!(at(c_bp(), rat(-5, 3)), at(c_zam(), rat(-5, 3)) + at(c_pi(), rat(-5, 3)));
}

#[test]
fn singular_vector_coefficients() {
    for n in 1..=6 {
        assert_eq!(singular_vector_coefficient(n).unwrap(), singular_vector_closed_form(n), "n = {n}");
    }
    assert_eq!(singular_vector_closed_form(1), rf("-(-k-1)(-2k-3)"));
    let at = |n, k| singular_vector_closed_form(n).specialize(&[(Var::K, k)]).unwrap();
    assert!(at(2, rat(0, 1)).is_zero());
    assert_eq!(at(3, rat(-3, 2)), RatFunc::from_int(-15));
}

#[test]
fn singular_vector_predicate() {
    assert!(is_singular_vector(2, &rat(0, 1)).unwrap());
    assert!(is_singular_vector(1, &rat(-3, 2)).unwrap());
    assert!(!is_singular_vector(5, &rat(-9, 4)).unwrap());
    let levels = [
        rat(-3, 2),
        rat(-1, 1),
        rat(-1, 2),
        rat(0, 1),
        rat(1, 2),
        rat(1, 1),
        rat(2, 1),
        rat(-9, 4),
        rat(-5, 3),
        rat(-2, 1),
    ];
    for k in &levels {
        for n in 1..=6 {
            assert_eq!(
                is_singular_vector(n, k).unwrap(),
                is_singular_vector_predicted(n, k),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn level_predicates() {
    assert!(!universal_bp_is_simple(&rat(-9, 4)).unwrap());
    assert!(universal_bp_is_simple(&rat(-2, 1)).unwrap());
    assert!(!universal_bp_is_simple(&rat(-3, 2)).unwrap());
    assert!(universal_bp_is_simple(&rat(-7, 2)).unwrap());
    assert!(universal_bp_is_simple(&rat(-3, 1)).is_err());
    assert!(simple_embedding_exists(&rat(-9, 4)).unwrap());
    assert!(!simple_embedding_exists(&rat(-1, 1)).unwrap());
    assert!(!simple_embedding_exists(&rat(0, 1)).unwrap());
    assert!(!simple_embedding_exists(&rat(-3, 2)).unwrap());
    assert!(simple_embedding_exists(&rat(-2, 1)).unwrap());
}

#[test]
fn commutator_relations() {
    let failures: Vec<String> = check_relations(-2..=2, 2)
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} at m={}, n={}", c.name, c.m, c.n))
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn lj_central_term_orientation() {
    // the printed (m^2-m) form agrees with the engine only at m = 0
    for m in -3..=3 {
        let engine = lj_engine_central_term(m);
        assert_eq!(engine, -(rf("(2k+3)/3") * RatFunc::from_int(m * m + m)).scale(&rat(1, 2)));
        assert_eq!(engine == lj_printed_central_term(m), m == 0, "m = {m}");
    }
}

#[test]
fn shifted_conformal_weights() {
    // under L~ = L - ∂J/2, G+ and G- both have weight 3/2
    let v = bp();
    let lt = shifted_conformal_vector();
    for (g, w) in [(GP, rat(3, 2)), (GM, rat(3, 2)), (J, rat(1, 1))] {
        let x = v.gen_state(g);
        let l0 = v.nth_product(&lt, 1, &x);
        assert_eq!(l0, x.scale(&RatFunc::from_rational(w)));
    }
}
