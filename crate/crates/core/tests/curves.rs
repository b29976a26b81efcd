mod common;

use proptest::prelude::*;
use qhc_core::catalog::{all_entries, catalog_get, fixture_modules, yfamily_labels, Label};
use qhc_core::curve::factor;
use qhc_core::report;
use qhc_core::{BiPoly, BranchKind, CurveSpec, Error, FieldElement, ModuleSpec, QuasiCurve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sorted_a(kinds: &[BranchKind]) -> (bool, bool, Vec<String>) {
    let mut a: Vec<String> = kinds
        .iter()
        .filter_map(|k| match k {
            BranchKind::Binomial { a, .. } => Some(a.to_string()),
            _ => None,
        })
        .collect();
    a.sort();
    (kinds.contains(&BranchKind::AxisX), kinds.contains(&BranchKind::AxisY), a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factoring_recovers_the_product(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_curve(&mut r, 7, 4);
        let c = &rc.curve;
        if let Ok(inferred) = QuasiCurve::new(c.field(), c.f().clone(), None) {
            prop_assert_eq!(inferred.weights(), c.weights());
        }
        let auto = QuasiCurve::new(c.field(), c.f().clone(), Some(c.weights())).unwrap();
        prop_assert_eq!(auto.unit(), c.unit());
        let kinds: Vec<BranchKind> = c.branches().iter().map(|b| b.kind.clone()).collect();
        let got: Vec<BranchKind> = auto.branches().iter().map(|b| b.kind.clone()).collect();
        prop_assert_eq!(sorted_a(&got), sorted_a(&kinds));
        let mut prod = BiPoly::constant(auto.unit().clone());
        for b in auto.branches() {
            prod = &prod * &b.kind.polynomial(auto.field(), auto.weights());
        }
        prop_assert_eq!(&prod, c.f());
    }

    #[test]
    fn repeated_factors_are_rejected(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_curve(&mut r, 5, 3);
        let c = &rc.curve;
        let i = r.gen_range(0..c.num_branches());
        let fi = c.branch(i).kind.polynomial(c.field(), c.weights());
        let g = c.f() * &fi;
        let err = factor(&g, c.weights(), c.field()).unwrap_err();
        prop_assert!(matches!(err, Error::NotReduced(_)), "{}", err);
    }

    #[test]
    fn curve_spec_round_trip(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = common::random_curve(&mut r, 6, 4).curve;
        let spec = CurveSpec::from_curve(&c);
        let back = CurveSpec::parse(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        let c2 = back.to_curve().unwrap();
        prop_assert_eq!(c2.f(), c.f());
        prop_assert_eq!(c2.branches().len(), c.branches().len());
    }
}

#[test]
fn irreducible_quadratic_over_q_is_reported() {
    let e = catalog_get(Label::D(4)).unwrap();
    assert!(e.curve.field().degree() > 1 || e.curve.num_branches() == 3);
    let k = qhc_core::NumberField::rationals();
    // x^2 + y^2 has no rational branch factors
    let f = &BiPoly::monomial(FieldElement::one(&k), 2, 0) + &BiPoly::monomial(FieldElement::one(&k), 0, 2);
    let err = QuasiCurve::new(&k, f, None).unwrap_err();
    assert!(matches!(err, Error::RootNotInField(_)), "{err}");
}

#[test]
fn catalog_specs_round_trip() {
    for e in all_entries().unwrap() {
        let spec = CurveSpec::from_curve(&e.curve);
        let c = CurveSpec::parse(&spec.to_json()).unwrap().to_curve().unwrap();
        assert_eq!(CurveSpec::from_curve(&c), spec, "{}", e.label);
        for fx in fixture_modules(&e).unwrap() {
            let ms = ModuleSpec::from_module(&fx.module);
            let m = ModuleSpec::parse(&ms.to_json()).unwrap().to_module(&c).unwrap();
            assert_eq!(m, fx.module, "{} {}", e.label, fx.name);
        }
    }
}

#[test]
fn labels_round_trip() {
    for e in all_entries().unwrap() {
        assert_eq!(Label::parse(&e.label.to_string()).unwrap(), e.label);
    }
    assert_eq!(Label::parse("e7").unwrap(), Label::E(7));
    assert!(Label::parse("Q_3").is_err());
    assert!(catalog_get(Label::parse("E_9").unwrap()).is_err());
    assert!(catalog_get(Label::parse("Y(4,2)").unwrap()).is_err());
    assert!(yfamily_labels().contains(&Label::YFamily { m: 7, n: 3 }));
}

#[test]
fn reports_are_deterministic() {
    for label in [Label::E(7), Label::YFamily { m: 3, n: 2 }] {
        let c = catalog_get(label).unwrap().curve;
        let a = report::derivations(&c).unwrap();
        let b = report::derivations(&c).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a["commutator_ok"], true);
        let s1 = report::semigroups(&c, None).unwrap();
        assert_eq!(s1["oracle_agrees"], true);
        assert_eq!(report::to_text(&s1), report::to_text(&report::semigroups(&c, None).unwrap()));
    }
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert!(matches!(CurveSpec::parse("{\"f\": 3}"), Err(Error::Parse(_))));
    assert!(matches!(CurveSpec::parse("{\"f\": [], \"extra\": 1}"), Err(Error::Parse(_))));
    let spec = CurveSpec::parse("{\"f\": []}").unwrap();
    assert!(matches!(spec.to_curve(), Err(Error::ZeroPolynomial)));
}
