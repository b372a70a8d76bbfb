use super::*;
use crate::matcher::tests::dfa_strategy;
use crate::samples;
use proptest::prelude::{prop_assert, proptest, ProptestConfig};

fn both_finite(d: &Dfa) -> [LevelReport; 2] {
    let cfg = ClassifyConfig::default();
    [Engine::Pattern, Engine::Algebra].map(|e| classify_finite(d, 3, e, &cfg).unwrap())
}

fn both_infinite(b: &Buchi) -> [LevelReport; 2] {
    let cfg = ClassifyConfig::default();
    [Engine::Pattern, Engine::Algebra].map(|e| classify_infinite(b, 3, e, &cfg).unwrap())
}

#[test]
fn contains_a_is_sigma2_1() {
    for r in both_finite(&samples::dfa_contains_a().minimize()) {
        assert_eq!(r.get(Level::Sigma2(1)), Some(true), "{:?}", r.engine);
        assert!(r.is_consistent());
    }
}

#[test]
fn ends_with_a_enters_at_fo2_2() {
    for r in both_finite(&samples::dfa_ends_with_a().minimize()) {
        assert_eq!(r.get(Level::Fo2(1)), Some(false), "{:?}", r.engine);
        assert_eq!(r.get(Level::Fo2(2)), Some(true), "{:?}", r.engine);
    }
}

#[test]
fn ab_star_lies_outside_fo2() {
    for r in both_finite(&samples::dfa_ab_star().minimize()) {
        assert_eq!(r.levels.fo2_all, Some(false));
        assert!(r.verdicts().iter().all(|&(_, v)| !v), "{r:?}");
    }
}

#[test]
fn eventually_a_is_sigma2_1() {
    for r in both_infinite(&samples::cm_figure()) {
        assert_eq!(r.get(Level::Sigma2(1)), Some(true), "{:?}", r.engine);
        assert_eq!(r.levels.fo2_all, None);
    }
}

#[test]
fn finitely_many_a_enters_at_sigma2_2() {
    for r in both_infinite(&samples::cm_finitely_many_a()) {
        assert_eq!(r.get(Level::Sigma2(1)), Some(false), "{:?}", r.engine);
        assert_eq!(r.get(Level::Sigma2(2)), Some(true), "{:?}", r.engine);
    }
}

#[test]
fn a_omega_is_in_every_level() {
    for r in both_infinite(&samples::cm_a_omega()) {
        assert!(r.verdicts().iter().all(|&(_, v)| v), "{r:?}");
    }
}

#[test]
fn refutations_name_the_pattern() {
    let r = &both_finite(&samples::dfa_ab_star())[0];
    assert!(r.evidence["fo2_all"].starts_with("builtin:da present; h: "));
    let r = &both_finite(&samples::dfa_contains_a())[0];
    assert_eq!(r.evidence["sigma2.1"], "absent: builtin:si:1");
}

#[test]
fn samples_crosscheck_clean() {
    let cfg = ClassifyConfig::default();
    for d in [samples::dfa_a(), samples::dfa_a_prime(), samples::dfa_contains_a(), samples::dfa_ab_star(), samples::dfa_universal()] {
        let r = crosscheck_finite(&d, 3, &cfg).unwrap();
        assert!(r.is_clean(), "{:?}", r.disagreements);
    }
    for b in [samples::cm_figure(), samples::cm_finitely_many_a(), samples::cm_a_omega()] {
        let r = crosscheck_infinite(&b, 3, &cfg).unwrap();
        assert!(r.is_clean(), "{:?}", r.disagreements);
        assert!(r.checks > 20);
    }
}

#[test]
fn single_state_automata_crosscheck_clean() {
    let cfg = ClassifyConfig::default();
    for f in [false, true] {
        let d = Dfa::from_table(vec!["q".into()], crate::automata::Alphabet::latin(2), vec![0, 0], 0, vec![f]).unwrap();
        assert!(crosscheck_finite(&d, 3, &cfg).unwrap().is_clean());
    }
}

#[test]
fn injected_fault_is_detected() {
    assert!(!fault_injection_self_test(&ClassifyConfig::default()).unwrap().is_empty());
}

#[test]
fn reports_round_trip_through_json() {
    let r = &both_finite(&samples::dfa_ends_with_a())[0];
    let s = serde_json::to_string(r).unwrap();
    assert!(s.contains(r#""sigma2":{"1":false"#), "{s}");
    assert_eq!(&serde_json::from_str::<LevelReport>(&s).unwrap(), r);
}

#[test]
fn non_carton_michel_input_is_rejected() {
    let b = Buchi::from_table(
        vec!["p".into(), "q".into()],
        crate::automata::Alphabet::latin(1),
        vec![(0, 0, 0), (1, 0, 0)],
        vec![true, true],
        vec![true, false],
    )
    .unwrap();
    for e in [Engine::Pattern, Engine::Algebra] {
        assert!(classify_infinite(&b, 2, e, &ClassifyConfig::default()).is_err());
    }
    assert!(classify_finite(&samples::dfa_a(), 0, Engine::Pattern, &ClassifyConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engines_agree_on_random_dfas(d in dfa_strategy(3)) {
        let cfg = ClassifyConfig::default();
        let r = crosscheck_finite(&d, 3, &cfg).unwrap();
        prop_assert!(r.is_clean(), "{:?}", r.disagreements);
        for e in [Engine::Pattern, Engine::Algebra] {
            prop_assert!(classify_finite(&d, 3, e, &cfg).unwrap().is_consistent());
        }
    }
}
