//! Property tests over random weights, branchings and field elements.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qwig_core::branching::{branch_candidates, index_sets, BranchingData};
use qwig_core::exactq::{deformed_root, HalfLaurent};
use qwig_core::invariants::{chi_c1, chi_v};
use qwig_core::superweight::{bilinear_form, check_generic, rho, rho_parts, Signature, Weight};
use qwig_core::wigner::{coupled_table, gamma, mu, omega, Form, MuConvention, Variant, WignerError};
use qwig_core::QFraction;

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-12i64..=12, -4i64..=4), 1..4).prop_map(|ts| {
        HalfLaurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

fn fraction() -> impl Strategy<Value = QFraction> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| QFraction::new(n, d).ok())
}

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=3, 1usize..=2).prop_map(|(m, n)| Signature::new(m, n).unwrap())
}

/// A dominant weight with components in `[-2, 3]`.
fn dominant() -> impl Strategy<Value = Weight> {
    signature().prop_flat_map(|s| {
        prop::collection::vec(-2i64..=3, s.d()).prop_filter_map("dominant", move |v| {
            let w = Weight::from_ints(s, &v).ok()?;
            w.is_dominant().then_some(w)
        })
    })
}

/// A generic weight together with one of its branchings.
fn branching() -> impl Strategy<Value = BranchingData> {
    dominant()
        .prop_filter("generic", |w| check_generic(w).unwrap().generic())
        .prop_flat_map(|w| {
            let cands = branch_candidates(&w).unwrap();
            let n = cands.len();
            (Just(w), Just(cands), 0..n.max(1))
        })
        .prop_filter_map("has a branching", |(w, cands, i)| cands.get(i).map(|l0| index_sets(&w, l0).unwrap()))
}

fn one() -> QFraction {
    QFraction::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_operations_invert(a in fraction(), b in fraction()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            prop_assert_eq!(&b * &b.inv().unwrap(), one());
        }
    }

    #[test]
    fn json_and_text_round_trip(a in fraction()) {
        prop_assert_eq!(QFraction::from_json(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(a.to_pretty().parse::<QFraction>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in fraction(), b in fraction(), q0 in 0.3f64..3.0) {
        let (Ok(x), Ok(y), Ok(p)) = (a.eval_numeric(q0), b.eval_numeric(q0), (&a * &b).eval_numeric(q0)) else {
            return Ok(());
        };
        prop_assert!((p - x * y).abs() <= 1e-9 * p.abs().max(1.0));
    }

    #[test]
    fn deformed_root_is_a_quotient(x in -12i64..=12) {
        let direct = (one() - QFraction::qhalf(-4 * x)).checked_div(&(QFraction::qhalf(2) - QFraction::qhalf(-2))).unwrap();
        prop_assert_eq!(deformed_root(x), direct.clone());
        prop_assert_eq!(QFraction::qhalf(-2 * x) * QFraction::qnum(x), direct);
        prop_assert_eq!(QFraction::qnum(x).limit_q1().unwrap(), BigRational::from_integer(x.into()));
        prop_assert_eq!(QFraction::qnum(x).bar(), QFraction::qnum(x));
    }

    #[test]
    fn rho_splits_orthogonally(s in signature()) {
        let (r0, r1) = rho_parts(s);
        prop_assert!(bilinear_form(&r0, &r1).unwrap().is_zero());
        let minus = BigRational::from_integer((-1).into());
        prop_assert_eq!(rho(s), r0.add(&r1.scale(&minus)).unwrap());
    }

    #[test]
    fn chi_v_reciprocity(w in dominant()) {
        prop_assert_eq!(chi_v(&w, false).unwrap() * chi_v(&w, true).unwrap(), one());
        prop_assert!(chi_c1(&Weight::zero(w.sig), false).unwrap().is_zero());
    }

    #[test]
    fn sum_rules_and_forms(b in branching()) {
        for v in [Variant::Lower, Variant::Raise] {
            let rp = match omega(&b, v, Form::RootProduct) {
                Ok(t) => t,
                Err(WignerError::DegenerateRoots(_)) => continue,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            prop_assert_eq!(rp.sum(), one());
            prop_assert_eq!(&omega(&b, v, Form::QNumberPhase).unwrap().entries, &rp.entries);
        }
    }

    #[test]
    fn coupled_columns_sum_to_one(b in branching()) {
        for v in [Variant::Lower, Variant::Raise] {
            let Ok(t) = coupled_table(&b, v, Form::RootProduct) else { continue };
            let mut cols: std::collections::BTreeMap<usize, QFraction> = Default::default();
            for (&(_, r), x) in &t.entries {
                let c = cols.entry(r.unwrap()).or_insert_with(QFraction::zero);
                *c = &*c + x;
            }
            for (r, total) in cols {
                prop_assert_eq!(total, one(), "r = {}", r);
            }
        }
    }

    #[test]
    fn mu_forms_agree(b in branching()) {
        for v in [Variant::Lower, Variant::Raise] {
            let rs: Vec<usize> = match v {
                Variant::Lower => b.i0.iter().chain(&b.i1).copied().collect(),
                Variant::Raise => b.i0bar.iter().chain(&b.i1).copied().collect(),
            };
            for r in rs {
                let a = mu(&b, r, v, Form::RootProduct, MuConvention::CoupledLabel);
                if matches!(a, Err(WignerError::DegenerateRoots(_))) {
                    continue;
                }
                prop_assert_eq!(a.clone(), mu(&b, r, v, Form::QNumberPhase, MuConvention::CoupledLabel));
                prop_assert_eq!(
                    gamma(&b, r, v, Form::RootProduct),
                    gamma(&b, r, v, Form::QNumberPhase)
                );
            }
        }
    }
}
