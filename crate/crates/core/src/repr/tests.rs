use bpvoa_exact::{rat, RatFunc, Rational, Var};
use proptest::prelude::*;

use super::*;
use crate::fields::{check_commutators, ShiftedField};
use crate::presentations::{bp, GM, GP, J, L};
use crate::realisation::{Level, Realisation};
use crate::weight::HalfInt;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn r(n: i64, d: i64) -> RatFunc {
    rat(n, d).into()
}

fn zero_hw() -> HwData {
    HwData::new(RatFunc::zero(), RatFunc::zero())
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn p_at_trivial_weight() {
    let p = p_poly(&zero_hw(), &r(-9, 4));
    assert_eq!(p.to_ratfunc(), rf("-x^3 - 3/4*x^2 - 1/8*x"));
    assert_eq!(p.rational_roots().unwrap(), vec![rat(-1, 2), rat(-1, 4), rat(0, 1)]);
    let generic = p_poly(&zero_hw(), &RatFunc::var(Var::K));
    assert!(generic.eval(&RatFunc::zero()).is_zero());
}

#[test]
fn watts_factorisation() {
    let w = WattsParams::symbolic();
    let hw = w.hw().unwrap();
    let p = p_poly(&hw, &w.level());
    let [x1, x2, x3] = p_factor(&w);
    assert_eq!(p, Cubic::from_roots(&[x1.clone(), x2.clone(), x3.clone()]));
    assert_eq!(x2.clone() - x1.clone(), rf("r - t*s"));
    assert_eq!(x1 - x3.clone(), rf("r' - t*s'"));
    assert_eq!(x2 - x3, rf("r + r' - t*(s + s')"));
    let expected_delta = rf("((r-t*s)^2 + (r-t*s)*(r'-t*s') + (r'-t*s')^2)/(3*t) - (t-1)^2/t");
    assert_eq!(hw.delta, expected_delta);
}

#[test]
fn watts_roots_in_distinct_cosets() {
    // s = s' = 1, k not in ½ℤ
    for (rr, rp, k) in [(1, 1, rat(-7, 3)), (2, 3, rat(1, 5)), (4, 1, rat(-13, 7))] {
        let t: RatFunc = (k + Rational::from_integer(3.into())).into();
        let w = WattsParams {
            r: RatFunc::from_int(rr),
            rp: RatFunc::from_int(rp),
            s: RatFunc::one(),
            sp: RatFunc::one(),
            t,
        };
        let roots: Vec<Rational> = w.roots().iter().map(|x| x.to_rational().unwrap()).collect();
        for i in 0..3 {
            for j in 0..i {
                assert!(!(&roots[i] - &roots[j]).is_integer());
            }
        }
    }
}

#[test]
fn gminus_components_symbolic() {
    let real = Realisation::symbolic();
    let x = RatFunc::var(Var::Lambda);
    let hw = HwData::symbolic();
    let c = gminus0_components(&real, &hw, &x).unwrap();
    let expected = ["w", "Δ*λ", "-2*Δ", "λ^3", "-λ^2", "λ"].map(rf);
    assert_eq!(c.values, expected);
    let spec = RelaxedSpec::new(RatFunc::var(Var::K), hw.clone(), x.clone()).unwrap();
    assert_eq!(c.total_value, gminus0(&spec, 0));
    assert_eq!(gplus0_engine(&real, &hw, &x).unwrap(), gplus0(&spec, 0));
    assert_eq!(gplus0(&spec, 0), RatFunc::one());
}

#[test]
fn gminus_vanishes_at_root() {
    let spec = RelaxedSpec::rational(rat(-9, 4), rat(0, 1), rat(0, 1), rat(3, 4)).unwrap();
    assert!(gminus0(&spec, -1).is_zero());
    assert!(!gminus0(&spec, 0).is_zero());
}

#[test]
fn classify_trivial_weight() {
    let irr = classify(&RelaxedSpec::rational(rat(-9, 4), rat(0, 1), rat(0, 1), rat(1, 3)).unwrap(), None).unwrap();
    assert_eq!(irr.status, Status::Irreducible);
    assert_eq!(irr.roots, strs(&["-1/2", "-1/4", "0"]));
    assert!(irr.roots_in_coset.is_empty());
    assert!(!irr.has_highest_weight_vectors);

    let red = classify(&RelaxedSpec::rational(rat(-9, 4), rat(0, 1), rat(0, 1), rat(0, 1)).unwrap(), None).unwrap();
    assert_eq!(red.status, Status::Reducible);
    assert_eq!(red.roots_in_coset, strs(&["0"]));
    assert_eq!(red.maximal_mu.as_deref(), Some("0"));
    assert_eq!(red.top_weights, Some(("1/2".to_string(), "-1/2".to_string())));

    let generic = RelaxedSpec::new(r(-9, 4), zero_hw(), RatFunc::var(Var::Lambda)).unwrap();
    assert_eq!(classify(&generic, None).unwrap().status, Status::GenericallyIrreducible);
    assert!(RelaxedSpec::rational(rat(-3, 1), rat(0, 1), rat(0, 1), rat(0, 1)).is_err());
}

#[test]
fn classify_complex_lambda() {
    let spec = RelaxedSpec::rational(rat(-9, 4), rat(0, 1), rat(0, 1), rat(0, 1)).unwrap();
    let c = classify(&spec, Some(&rat(1, 2))).unwrap();
    assert_eq!(c.status, Status::Irreducible);
    let z: ComplexRat = "1/3-2/5i".parse().unwrap();
    assert_eq!(z, ComplexRat { re: rat(1, 3), im: rat(-2, 5) });
    assert_eq!(z.to_string(), "1/3-2/5i");
    assert_eq!("-i".parse::<ComplexRat>().unwrap().im, rat(-1, 1));
    assert_eq!("2".parse::<ComplexRat>().unwrap(), ComplexRat::real(rat(2, 1)));
}

#[test]
fn maximal_root_in_coset() {
    // x₁ = 1, x₂ = 3, x₃ = 1/2 at t = 5/2
    let w = WattsParams {
        r: RatFunc::from_int(2),
        rp: r(1, 2),
        s: RatFunc::zero(),
        sp: RatFunc::zero(),
        t: r(5, 2),
    };
    assert_eq!(w.roots(), [RatFunc::from_int(1), RatFunc::from_int(3), r(1, 2)]);
    let hw = w.hw().unwrap();
    let spec = RelaxedSpec::new(w.level(), hw, RatFunc::zero()).unwrap();
    let c = classify(&spec, None).unwrap();
    assert_eq!(c.roots_in_coset, strs(&["1", "3"]));
    assert_eq!(maximal_chw(&c), Some(ComplexRat::real(rat(3, 1))));
}

#[test]
fn top_weight_formula() {
    let (j0, l0) = top_weights(&RatFunc::zero(), &RatFunc::zero(), &r(-9, 4));
    assert_eq!((j0, l0), (r(1, 2), r(-1, 2)));
    let k = RatFunc::var(Var::K);
    let kappa = rf("(2*k+3)/3");
    assert!(top_weights(&kappa, &RatFunc::var(Var::Delta), &k).0.is_zero());
    let real = Realisation::symbolic();
    let mu = RatFunc::var(Var::Lambda);
    let engine = top_weights_engine(&real, &HwData::symbolic(), &mu).unwrap();
    assert_eq!(engine, top_weights(&mu, &RatFunc::var(Var::Delta), &k));
}

#[test]
fn relaxed_character() {
    let spec = RelaxedSpec::rational(rat(-9, 4), rat(0, 1), rat(0, 1), rat(0, 1)).unwrap();
    let ch_m = QSeries::one(8);
    let ch = character_relaxed(&spec, &ch_m, 8);
    assert_eq!(ch.z_exp, r(1, 2));
    assert!(ch.delta);
    assert_eq!(ch.series, QSeries::eta_inverse_squared(8));
    let sum = character_relaxed(&spec, &(&ch_m + &ch_m), 8);
    assert_eq!(sum.series, (&ch.series + &ch.series));
}

#[test]
fn critical_classifier() {
    let g = g_poly(&RatFunc::zero(), &RatFunc::zero());
    assert_eq!(g.to_ratfunc(), rf("-x*(x+1)*(x+2)"));
    let third = ComplexRat::real(rat(1, 3));
    let c = classify_critical(&rat(0, 1), &rat(0, 1), &third).unwrap();
    assert_eq!(c.status, Status::Irreducible);
    let c = classify_critical(&rat(0, 1), &rat(0, 1), &ComplexRat::real(rat(0, 1))).unwrap();
    assert_eq!(c.status, Status::Undetermined);
    assert_eq!(c.roots, strs(&["-2", "-1", "0"]));
    assert_eq!(c.maximal_mu.as_deref(), Some("0"));
}

/// The engine gives `G-_0 (u ⊗ e^{-j+xc}) = g(x) u ⊗ e^{-j+(x-1)c}` with the
/// argument equal to the exponent of the source vector.
#[test]
fn critical_gminus_shift() {
    let real = Realisation::critical();
    let (d, w, x) = (RatFunc::var(Var::Delta), RatFunc::var(Var::W), RatFunc::var(Var::Lambda));
    let got = critical_gminus0_engine(&real, &d, &w, &x).unwrap();
    let g = g_poly(&d, &w);
    assert_eq!(got, g.eval(&x));
    assert_ne!(got, g.eval(&(x.clone() - RatFunc::one())));
}

#[test]
fn gradability() {
    let (d, w) = (rat(2, 1), rat(-1, 3));
    assert!(gradable_critical(&[(0, d.clone())], &[(0, w.clone())]));
    assert!(!gradable_critical(&[(0, d), (1, rat(1, 1))], &[(0, w)]));
    assert!(gradable_critical(&[], &[]));
    assert!(gradable_critical(&[(2, rat(0, 1))], &[]));
}

fn bp_vectors() -> Vec<crate::voa::PbwMonomial> {
    let voa = bp();
    (0..=2).flat_map(|w| voa.pbw_basis(HalfInt::from_int(w))).collect()
}

#[test]
fn bp_spectral_flow_preserves_ope() {
    let voa = bp();
    let k = RatFunc::var(Var::K);
    let gens = generator_states(&voa);
    let vectors = bp_vectors();
    for ell in -2..=2 {
        let tw = bp_spectral_flow(&voa, &k, ell);
        let (checked, failures) = check_commutators(&tw, &gens, &vectors, -1..=1);
        assert!(checked > 0);
        assert!(failures.is_empty(), "ℓ = {ell}: {failures:?}");
    }
}

#[test]
fn conjugation_preserves_ope() {
    let voa = bp();
    let k = RatFunc::var(Var::K);
    let tw = conjugation(&voa, &k);
    let (_, failures) = check_commutators(&tw, &generator_states(&voa), &bp_vectors(), -1..=1);
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn conjugation_order_four() {
    let voa = bp();
    let k = RatFunc::var(Var::K);
    let conj = |g| conjugation_field(&voa, &k, g);
    for g in [J, GP, L, GM] {
        let mut f = conj(g);
        let mut powers = vec![f.clone()];
        for _ in 0..3 {
            f = compose_fields(&f, conj, &voa);
            powers.push(f.clone());
        }
        assert_eq!(powers[3], ShiftedField::of(voa.gen_state(g)), "generator {g}");
        let square = if g == J || g == L { voa.gen_state(g) } else { voa.gen_state(g).neg() };
        assert_eq!(powers[1], ShiftedField::of(square));
    }
    assert_eq!(
        compose_fields(&conj(GP), conj, &voa),
        ShiftedField::of(voa.gen_state(GP).neg())
    );
}

#[test]
fn spectral_flow_data() {
    let voa = bp();
    let k = RatFunc::var(Var::K);
    for g in [J, GP, L, GM] {
        let id = bp_spectral_flow_field(&voa, &k, HalfInt::ZERO, g).unwrap();
        assert_eq!(id, ShiftedField::of(voa.gen_state(g)));
    }
    let lf = bp_spectral_flow_field(&voa, &k, HalfInt::from_int(2), L).unwrap();
    let c: Vec<_> = lf.terms().filter(|(s, _)| *s == -2).collect();
    assert_eq!(c[0].1, &voa.vacuum_state().scale(&rf("(2*k+3)")));
    assert!(bp_spectral_flow_field(&voa, &k, HalfInt::from_twice(1), GP).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn engine_matches_closed_form(
        kn in -30i64..30, d in -10i64..10, w in -10i64..10, l in -10i64..10, n in -3i64..3
    ) {
        let k = rat(2 * kn + 1, 5);
        prop_assume!(k != rat(-3, 1));
        let real = Realisation::new(&Level::at(k.clone())).unwrap();
        let hw = HwData::new(r(d, 3), r(w, 2));
        let lambda = r(l, 7);
        let spec = RelaxedSpec::new(k.into(), hw.clone(), lambda.clone()).unwrap();
        let x = lambda + RatFunc::from_int(n);
        let c = gminus0_components(&real, &hw, &x).unwrap();
        prop_assert_eq!(c.total_value, gminus0(&spec, n));
        prop_assert_eq!(gplus0_engine(&real, &hw, &x).unwrap(), RatFunc::one());
        let tw = top_weights_engine(&real, &hw, &x).unwrap();
        prop_assert_eq!(tw, top_weights(&x, &hw.delta, &spec.k));
    }

    #[test]
    fn classification_matches_window(
        kn in -30i64..30, d in -6i64..6, w in -6i64..6, l in -8i64..8
    ) {
        let k = rat(kn, 4);
        prop_assume!(k != rat(-3, 1));
        let spec = RelaxedSpec::rational(k, rat(d, 1), rat(w, 1), rat(l, 4)).unwrap();
        let c = classify(&spec, None).unwrap();
        let (lo, hi) = c.window.unwrap();
        let bound: Rational = c.cauchy_bound.as_deref().unwrap().parse::<RatFunc>().unwrap().to_rational().unwrap();
        // the window covers |λ + n| ≤ B
        prop_assert!(Rational::from(rat(l, 4)) + Rational::from_integer((lo - 1).into()) < -bound.clone());
        prop_assert!(rat(l, 4) + Rational::from_integer((hi + 1).into()) > bound);
        let zeros: Vec<i64> = (lo..=hi).filter(|&n| gminus0(&spec, n).is_zero()).collect();
        prop_assert_eq!(zeros.len(), c.roots_in_coset.len());
        prop_assert_eq!(c.status == Status::Irreducible, zeros.is_empty());
        // rational roots are roots
        for root in &c.roots {
            let x: RatFunc = root.parse().unwrap();
            prop_assert!(spec.p().eval(&x).is_zero());
        }
    }
}

/// Without the `z^{∓1}` shifts on `G±` and the `z^{-2}` term, and with `-J z^{-1}`,
/// the transformation breaks the `J L`, `G± L` and `G+ G-` products.
#[test]
fn unshifted_conjugation_fails() {
    let voa = bp();
    let v2 = voa.clone();
    let kappa = rf("(2*k+3)/3");
    let tw = crate::fields::Twisted::new(&*voa, move |m: &crate::voa::PbwMonomial| {
        let j = v2.gen_state(J);
        match m.modes()[0].gen {
            GP => ShiftedField::of(v2.gen_state(GM)),
            GM => ShiftedField::of(v2.gen_state(GP).neg()),
            J => ShiftedField::of(j.neg()).plus(-1, &v2.vacuum_state().scale(&-kappa.clone())),
            _ => ShiftedField::of(v2.gen_state(L).sub(&v2.derivative(&j))).plus(-1, &j.neg()),
        }
    });
    let (_, failures) = check_commutators(&tw, &generator_states(&voa), &bp_vectors(), -1..=1);
    let pairs: std::collections::BTreeSet<_> = failures.iter().map(|f| (f.a.min(f.b), f.a.max(f.b))).collect();
    assert!(pairs.contains(&(J, L)));
    assert!(pairs.contains(&(GP, GM)));
}
