//! Property tests for the consequence relation, the modal layer and the
//! concrete syntax. The oracles here evaluate formulas directly and do not
//! go through the library's truth tables.

use proptest::prelude::*;

use cqe_core::modal::{entails, holds_all, satisfiable, satisfying_model};
use cqe_core::{derives, parse_l, parse_m, LFormula, LTheory, MFormula, Render, Style};

const ATOMS: [&str; 3] = ["a", "b", "c"];

fn l_formula(depth: u32) -> impl Strategy<Value = LFormula> {
    let leaf = prop_oneof![
        8 => prop::sample::select(&ATOMS[..]).prop_map(LFormula::atom),
        1 => Just(LFormula::Top),
        1 => Just(LFormula::Bottom),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(LFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.and(y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.or(y)),
            (inner.clone(), inner).prop_map(|(x, y)| x.implies(y)),
        ]
    })
}

fn m_formula(depth: u32, inner_depth: u32) -> impl Strategy<Value = MFormula> {
    let leaf = prop_oneof![
        8 => l_formula(inner_depth).prop_map(MFormula::Box),
        1 => Just(MFormula::Top),
        1 => Just(MFormula::Bottom),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(MFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.and(y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x.or(y)),
            (inner.clone(), inner).prop_map(|(x, y)| x.implies(y)),
        ]
    })
}

fn theory(max: usize) -> impl Strategy<Value = LTheory> {
    prop::collection::vec(l_formula(3), 0..=max).prop_map(|v| v.into_iter().collect())
}

fn value(f: &LFormula, v: u8) -> bool {
    match f {
        LFormula::Atom(a) => {
            let i = ATOMS
                .iter()
                .position(|n| *n == a.name())
                .expect("known atom");
            v >> i & 1 == 1
        }
        LFormula::Top => true,
        LFormula::Bottom => false,
        LFormula::Not(x) => !value(x, v),
        LFormula::And(x, y) => value(x, v) && value(y, v),
        LFormula::Or(x, y) => value(x, v) || value(y, v),
        LFormula::Implies(x, y) => !value(x, v) || value(y, v),
    }
}

fn oracle_derives(premises: &LTheory, goal: &LFormula) -> bool {
    (0..8u8).all(|v| !premises.iter().all(|p| value(p, v)) || value(goal, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn derives_agrees_with_valuations(gamma in theory(3), goal in l_formula(3)) {
        prop_assert_eq!(derives(&gamma, &goal), oracle_derives(&gamma, &goal));
    }

    #[test]
    fn reflexivity(gamma in theory(3), f in l_formula(3)) {
        prop_assert!(derives(&gamma.with(f.clone()), &f));
    }

    #[test]
    fn weakening(gamma in theory(2), delta in theory(2), f in l_formula(3)) {
        if derives(&gamma, &f) {
            prop_assert!(derives(&gamma.union(&delta), &f));
        }
    }

    #[test]
    fn cut(gamma in theory(2), c in l_formula(2), f in l_formula(3)) {
        if derives(&gamma, &c) && derives(&gamma.with(c.clone()), &f) {
            prop_assert!(derives(&gamma, &f));
        }
    }

    #[test]
    fn box_is_monotone(x in l_formula(3), y in l_formula(3)) {
        if derives(&LTheory::from([x.clone()]), &y) {
            prop_assert!(entails([&MFormula::Box(x)], &MFormula::Box(y)));
        }
    }

    #[test]
    fn box_distributes_over_conjunction(x in l_formula(2), y in l_formula(2)) {
        let both = MFormula::Box(x.clone()).and(MFormula::Box(y.clone()));
        let conj = MFormula::Box(x.and(y));
        prop_assert!(entails([&both], &conj));
        prop_assert!(entails([&conj], &both));
    }

    #[test]
    fn satisfying_model_satisfies(gamma in prop::collection::vec(m_formula(3, 2), 1..4)) {
        match satisfying_model(&gamma) {
            Some(model) => {
                prop_assert!(satisfiable(&gamma));
                prop_assert!(holds_all(&model, &gamma));
            }
            None => prop_assert!(!satisfiable(&gamma)),
        }
    }

    #[test]
    fn expansion_is_equivalent(phi in m_formula(3, 2)) {
        let expanded = phi.expand();
        prop_assert!(entails([&phi], &expanded));
        prop_assert!(entails([&expanded], &phi));
    }

    #[test]
    fn entailment_is_refutation(gamma in prop::collection::vec(m_formula(2, 2), 0..3), phi in m_formula(2, 2)) {
        let mut with_negation = gamma.clone();
        with_negation.push(phi.clone().not());
        prop_assert_eq!(entails(&gamma, &phi), !satisfiable(&with_negation));
    }

    #[test]
    fn l_print_parse_roundtrip(f in l_formula(5)) {
        for style in [Style::ASCII, Style::UNICODE, Style::COMPACT] {
            let text = f.render(style);
            prop_assert_eq!(parse_l(&text).unwrap(), f.clone(), "{}", text);
        }
    }

    #[test]
    fn m_print_parse_roundtrip(f in m_formula(4, 3)) {
        for style in [Style::ASCII, Style::UNICODE, Style::COMPACT] {
            let text = f.render(style);
            prop_assert_eq!(parse_m(&text).unwrap(), f.clone(), "{}", text);
        }
    }
}
