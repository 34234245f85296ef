//! Cross-checks between the search paths, parity certificates and models.

mod common;

use kstoolkit::ksengine::{
    build_scenario, cabello18, count_valuations, enumerate_valuations, find_valuation,
    noncontextual_model, parity_certificate, verify_func, KSScenario, ModelOutcome,
};
use kstoolkit::probability::DensityOperator;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn check_links(s: &KSScenario) {
    let count = count_valuations(s).unwrap();
    let found = find_valuation(s);
    assert_eq!(found.is_some(), count > BigUint::from(0u32));
    if parity_certificate(s).is_some() {
        assert_eq!(count, BigUint::from(0u32));
    }
    if let Some(v) = found {
        assert!(verify_func(&v, s).unwrap().passed());
    }
    if s.rays().len() <= 30 {
        let all = enumerate_valuations(s).unwrap();
        assert_eq!(BigUint::from(all.len()), count);
        for v in &all {
            assert!(verify_func(v, s).unwrap().passed());
        }
    }
}

/// Context subsets of the eighteen-ray set, chosen by bitmask.
fn sub_scenarios() -> impl Strategy<Value = Vec<usize>> {
    (1u32..(1 << 9)).prop_map(|mask| (0..9).filter(|k| mask >> k & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn search_paths_agree_on_sub_scenarios(keep in sub_scenarios()) {
        let s = cabello18(true).sub_scenario(&keep).unwrap();
        check_links(&s);
    }

    #[test]
    fn unmerged_counts_are_products(keep in sub_scenarios()) {
        let merged = cabello18(true).sub_scenario(&keep).unwrap();
        let text = kstoolkit::cli::serialize_scenario(&merged);
        let split = kstoolkit::cli::parse_scenario(&text, false).unwrap();
        let expected: BigUint = split.contexts().iter().map(|c| BigUint::from(c.dim())).product();
        prop_assert_eq!(count_valuations(&split).unwrap(), expected);
    }
}

#[test]
fn every_sub_scenario_obeys_the_soundness_link() {
    let full = cabello18(true);
    for mask in 1u32..(1 << 9) {
        let keep: Vec<usize> = (0..9).filter(|k| mask >> k & 1 == 1).collect();
        let s = full.sub_scenario(&keep).unwrap();
        if parity_certificate(&s).is_some() {
            assert_eq!(count_valuations(&s).unwrap(), BigUint::from(0u32), "{keep:?}");
        }
    }
    check_links(&full);
}

#[test]
fn only_the_full_set_has_a_certificate() {
    let full = cabello18(true);
    let certified: Vec<u32> = (1u32..(1 << 9))
        .filter(|mask| {
            let keep: Vec<usize> = (0..9).filter(|k| mask >> k & 1 == 1).collect();
            parity_certificate(&full.sub_scenario(&keep).unwrap()).is_some()
        })
        .collect();
    assert_eq!(certified, vec![(1 << 9) - 1]);
}

#[test]
fn models_reproduce_born_probabilities() {
    let mut rng = StdRng::seed_from_u64(7);
    let full = cabello18(true);
    for keep in [vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4, 5, 6, 7]] {
        let s = full.sub_scenario(&keep).unwrap();
        for _ in 0..5 {
            let rho = common::random_mixed_state(&mut rng, 4);
            match noncontextual_model(&s, &rho).unwrap() {
                ModelOutcome::Feasible(model) => assert!(model.reproduces(&s, &rho).unwrap()),
                ModelOutcome::Infeasible => {}
            }
        }
        // the maximally mixed state always has a model on a colorable set of
        // one or two contexts: a uniform choice per context
        if keep.len() <= 2 {
            let rho = DensityOperator::maximally_mixed(4);
            assert!(matches!(
                noncontextual_model(&s, &rho).unwrap(),
                ModelOutcome::Feasible(_)
            ));
        }
    }
}

/// Verdicts cross-checked with an independent floating-point LP over the
/// 26 valuations of each deletion.
#[test]
fn eight_context_model_verdicts() {
    let mixed = DensityOperator::maximally_mixed(4);
    let pure = DensityOperator::pure(&kstoolkit::exactlin::RVector::from_ints(&[0, 0, 0, 1])).unwrap();
    for k in 0..9 {
        let s = cabello18(true).without_context(k).unwrap();
        for (rho, expect_feasible) in [(&mixed, true), (&pure, k >= 2)] {
            match noncontextual_model(&s, rho).unwrap() {
                ModelOutcome::Feasible(model) => {
                    assert!(expect_feasible, "deletion {k}");
                    assert!(model.reproduces(&s, rho).unwrap());
                }
                ModelOutcome::Infeasible => assert!(!expect_feasible, "deletion {k}"),
            }
        }
    }
}

#[test]
fn two_context_chain_has_expected_count() {
    let full = cabello18(true);
    // contexts 1 and 2 share v01 only: 1 + 3·3 valuations
    let s = full.sub_scenario(&[0, 1]).unwrap();
    assert_eq!(count_valuations(&s).unwrap(), BigUint::from(10u32));
    let raw = kstoolkit::ksengine::cabello18_contexts();
    let unmerged = build_scenario(4, &raw[..2], false).unwrap();
    assert_eq!(count_valuations(&unmerged).unwrap(), BigUint::from(16u32));
}
