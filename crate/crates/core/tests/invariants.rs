use std::sync::Arc;

use ncbinom::freealg::{Alphabet, NcPoly, Word};
use ncbinom::realize::{apply_assigned, rho_truncated, DerivKind, FuncExpr, FuncKey, Operator, OperatorAssignment};
use ncbinom::rewrite::{normalize, RelationPreset};
use ncbinom::scalars::{parse_scalar, CycloScalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = CycloScalar> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| CycloScalar::ratio(n, d))
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    prop::array::uniform4((-5i64..=5, 1i64..=4)).prop_map(|cs| {
        let mut acc = CycloScalar::zero();
        let mut z = CycloScalar::one();
        for (n, d) in cs {
            acc = &acc + &(&z * &CycloScalar::ratio(n, d));
            z = &z * &CycloScalar::zeta();
        }
        acc
    })
}

fn ud() -> Arc<Alphabet> {
    Alphabet::new(&["U", "D"]).unwrap()
}

fn poly(max_terms: usize, max_len: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0u8..2, 0..=max_len), small_rational()), 0..=max_terms)
        .prop_map(|terms| NcPoly::from_terms(&ud(), terms.into_iter().map(|(w, c)| (Word::new(w), c))))
}

fn func() -> impl Strategy<Value = FuncExpr> {
    prop::collection::vec((0i64..=2, small_rational(), small_rational(), small_rational()), 1..=3).prop_map(|terms| {
        let mut f = FuncExpr::zero();
        for (c, alpha, beta, coeff) in terms {
            f.add_term(FuncKey::new(CycloScalar::from_int(c), alpha, beta), coeff);
        }
        f
    })
}

fn first_order_presets() -> Vec<RelationPreset> {
    let lam = CycloScalar::ratio(3, 2);
    vec![RelationPreset::first_order_plus(&lam), RelationPreset::first_order_minus(&lam)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycloScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycloScalar::one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn ring_axioms(p in poly(3, 3), q in poly(3, 3), r in poly(3, 3)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&q + &r) * &p, &(&q * &p) + &(&r * &p));
        prop_assert_eq!(&p * &NcPoly::one(&ud()), p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn normalize_is_idempotent_linear_multiplicative(p in poly(3, 4), q in poly(3, 3), s in small_rational()) {
        for preset in first_order_presets() {
            let np = normalize(&p, &preset).unwrap();
            let nq = normalize(&q, &preset).unwrap();
            prop_assert_eq!(normalize(&np, &preset).unwrap(), np.clone());
            prop_assert_eq!(normalize(&(&p + &q.scale(&s)), &preset).unwrap(), &np + &nq.scale(&s));
            prop_assert_eq!(normalize(&(&p * &q), &preset).unwrap(), normalize(&(&np * &nq), &preset).unwrap());
            for (w, _) in np.terms() {
                prop_assert!(preset.is_normal(w));
            }
        }
    }

    #[test]
    fn leibniz_rule(f in func(), g in func()) {
        let d = |h: &FuncExpr| h.differentiate(DerivKind::Plain);
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
    }

    #[test]
    fn apply_is_a_homomorphism(p in poly(3, 3), q in poly(3, 3), u in func(), f in func()) {
        let asg = OperatorAssignment::new()
            .assign("D", Operator::Derivation(DerivKind::Plain)).unwrap()
            .assign("U", Operator::MultiplyBy(u)).unwrap();
        let inner = apply_assigned(&q, &asg, &f).unwrap();
        prop_assert_eq!(apply_assigned(&(&p * &q), &asg, &f).unwrap(), apply_assigned(&p, &asg, &inner).unwrap());
    }

    #[test]
    fn normalize_commutes_with_the_faithful_realization(p in poly(3, 4), f in func()) {
        let lam = CycloScalar::ratio(3, 2);
        let preset = RelationPreset::first_order_plus(&lam);
        let asg = OperatorAssignment::new()
            .assign("D", Operator::Derivation(DerivKind::Plain)).unwrap()
            .assign("U", Operator::MultiplyBy(FuncExpr::exp(&lam))).unwrap();
        let np = normalize(&p, &preset).unwrap();
        prop_assert_eq!(apply_assigned(&p, &asg, &f).unwrap(), apply_assigned(&np, &asg, &f).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truncated_representation_agrees(p in poly(4, 6)) {
        for preset in first_order_presets() {
            let u = preset.alphabet().index("U").unwrap();
            let deg = p.degree_in(u);
            let n = deg + 2;
            let lhs = rho_truncated(&p, &preset, n).unwrap();
            let rhs = rho_truncated(&normalize(&p, &preset).unwrap(), &preset, n).unwrap();
            prop_assert!(lhs.columns_equal(&rhs, 0..=n - deg));
        }
    }
}
