mod common;

use closed_geodesics::systems::{cutoff, difference_witness, expand, reduce, IrrationalSystem};
use closed_geodesics::Rational;
use common::{absolute_difference_oracle, effective_difference_oracle, random_system, ratio, rng};
use proptest::prelude::*;

fn system(seed: u64) -> IrrationalSystem {
    random_system(&mut rng(seed), 8, 6, 12)
}

fn eta() -> impl Strategy<Value = Rational> {
    (1i64..=64).prop_flat_map(|d| (0..d).prop_map(move |a| ratio(a, d)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eta_actions_compose(seed: u64, a in eta(), b in eta()) {
        let sys = system(seed);
        let twice = sys.eta_action(&a).eta_action(&b);
        prop_assert_eq!(twice, sys.eta_action(&(&a + &b)));
    }

    #[test]
    fn offset_sum_is_invariant(seed: u64, a in eta()) {
        let sys = system(seed);
        prop_assert_eq!(sys.eta_action(&a).offset_sum(), sys.offset_sum());
    }

    #[test]
    fn absolute_difference_matches_definition(seed: u64, a in eta()) {
        let sys = system(seed);
        prop_assert_eq!(sys.absolute_difference(&a), absolute_difference_oracle(sys.weights(), sys.offsets(), &a));
    }

    #[test]
    fn candidates_cover_a_dense_sweep(seed: u64) {
        let sys = system(seed);
        let best = sys.effective_difference();
        let candidates = sys.candidates();
        for d in 1..=64i64 {
            for a in 0..d {
                let e = ratio(a, d);
                let v = sys.absolute_difference(&e);
                prop_assert!(v <= best.value);
                if v > 0 {
                    prop_assert!(candidates.contains(&e));
                }
            }
        }
        prop_assert_eq!(best.value, effective_difference_oracle(&sys));
    }

    #[test]
    fn expansion_and_cutoff_preserve_absolute_differences(seed: u64, a in eta()) {
        let sys = system(seed);
        let cut = cutoff(&sys);
        prop_assert!(sys.pointwise_equivalent(&cut));
        prop_assert_eq!(sys.absolute_difference(&a), cut.absolute_difference(&a));
        for j in 0..sys.len() {
            let shifted = sys.eta_action(&(sys.offsets()[j].clone() * ratio(1, sys.weights()[j])));
            let expanded = expand(&shifted, j).unwrap();
            prop_assert_eq!(expanded.len(), sys.len() + sys.weights()[j].unsigned_abs() as usize - 1);
            prop_assert!(shifted.pointwise_equivalent(&expanded));
        }
    }

    #[test]
    fn reduction_has_unit_weights_and_the_same_difference(seed: u64) {
        let sys = system(seed);
        let (reduced, transcript) = reduce(&sys);
        prop_assert!(reduced.weights().iter().all(|p| p.abs() == 1));
        prop_assert_eq!(reduced.effective_difference().value, sys.effective_difference().value);
        for e in reduced.candidates() {
            prop_assert_eq!(
                reduced.absolute_difference(&e),
                sys.absolute_difference(&(&e + &transcript.cumulative_eta))
            );
        }
    }

    #[test]
    fn witness_has_positive_difference(seed: u64) {
        let sys = system(seed);
        let w = difference_witness(&sys).unwrap();
        prop_assert!(absolute_difference_oracle(sys.weights(), sys.offsets(), &w) >= 1);
        prop_assert!(sys.effective_difference().value >= 1);
    }
}
