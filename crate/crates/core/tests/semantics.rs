//! Cross-checks of the lasso evaluator against the independent reference
//! evaluator, and the semantic laws of negation, simplification, and
//! printing.

mod common;

use common::{eval_naive, formula_strategy, lasso_strategy};
use deltanorm::{classify, eval_lasso, parse, simplify, HierarchyClass};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn eval_agrees_with_reference((f, w) in (formula_strategy(14), lasso_strategy())) {
        let fast = eval_lasso(&f, &w).unwrap();
        let slow = eval_naive(&f, &w);
        prop_assert_eq!(fast, slow, "formula `{}` on `{}`", f, w);
    }

    #[test]
    fn negation_complements((f, w) in (formula_strategy(12), lasso_strategy())) {
        let v = eval_lasso(&f, &w).unwrap();
        let nv = eval_lasso(&f.negated(), &w).unwrap();
        prop_assert_eq!(v, !nv);
    }

    #[test]
    fn negation_preserves_size(f in formula_strategy(16)) {
        prop_assert_eq!(f.negated().size(), f.size());
        prop_assert_eq!(f.negated().negated(), f);
    }

    #[test]
    fn classify_negation_duality(f in formula_strategy(12)) {
        let mut dual: Vec<HierarchyClass> =
            classify(&f).iter().map(HierarchyClass::dual).collect();
        dual.sort();
        let mut neg = classify(&f.negated());
        neg.sort();
        prop_assert_eq!(neg, dual);
    }

    #[test]
    fn simplify_preserves_semantics((f, w) in (formula_strategy(12), lasso_strategy())) {
        let s = simplify(&f);
        prop_assert_eq!(eval_lasso(&f, &w).unwrap(), eval_lasso(&s, &w).unwrap());
    }

    #[test]
    fn simplify_never_climbs_the_hierarchy(f in formula_strategy(12)) {
        let a = deltanorm::hierarchy::levels(&f);
        let b = deltanorm::hierarchy::levels(&simplify(&f));
        prop_assert!(b.sigma <= a.sigma && b.pi <= a.pi && b.delta <= a.delta);
    }

    #[test]
    fn print_parse_round_trip(f in formula_strategy(16)) {
        let text = f.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, f, "printed as `{}`", text);
    }

    #[test]
    fn expand_limits_preserves_semantics((f, w) in (formula_strategy(10), lasso_strategy())) {
        let e = f.expand_limits();
        prop_assert_eq!(eval_lasso(&f, &w).unwrap(), eval_lasso(&e, &w).unwrap());
    }
}

#[test]
fn reference_evaluator_spot_checks() {
    let ap = common::prop_names();
    let w = deltanorm::LassoWord::parse("{a},{a};{c}", &ap).unwrap();
    let f = parse("a U X G (b | X F c)").unwrap();
    assert!(eval_naive(&f, &w));
    let w2 = deltanorm::LassoWord::parse("{a},{a};{b}", &ap).unwrap();
    assert!(eval_naive(&f, &w2));
    let w3 = deltanorm::LassoWord::parse(";{a}", &ap).unwrap();
    assert!(eval_naive(&parse("G a").unwrap(), &w3));
    assert!(!eval_naive(&parse("G b").unwrap(), &w3));
}
