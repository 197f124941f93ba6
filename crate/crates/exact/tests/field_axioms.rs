use bpvoa_exact::{rat, Monomial, Poly, RatFunc, Var};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u16..3, 0u16..3, -5i64..6), 1..4).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(a, b, c)| {
                    let mut e = [0u16; bpvoa_exact::NVARS];
                    e[Var::K.index()] = a;
                    e[Var::Lambda.index()] = b;
                    (Monomial(e), rat(c, 1))
                })
                .collect(),
        )
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), poly_strategy()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn addition_is_associative(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfunc_strategy()) {
        let again = RatFunc::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let reparsed: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, a);
    }

    #[test]
    fn specialization_commutes_with_arithmetic(a in ratfunc_strategy(), b in ratfunc_strategy(), n in -7i64..8, d in 1i64..5) {
        let bind = [(Var::K, rat(n, d)), (Var::Lambda, rat(d, 3))];
        if let (Ok(sa), Ok(sb)) = (a.specialize(&bind), b.specialize(&bind)) {
            if let Ok(prod) = (&a * &b).specialize(&bind) {
                prop_assert_eq!(prod, &sa * &sb);
            }
            if let Ok(sum) = (&a + &b).specialize(&bind) {
                prop_assert_eq!(sum, &sa + &sb);
            }
        }
    }

    #[test]
    fn nonzero_elements_invert(a in ratfunc_strategy()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&a - &a, RatFunc::zero());
    }
}
