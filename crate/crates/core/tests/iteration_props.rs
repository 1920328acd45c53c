mod common;

use closed_geodesics::topology::{average_betti, betti, poincare_coeffs, SpaceFormSpec};
use closed_geodesics::Error;
use common::{random_bumpy, random_normal_form, ratio, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn first_iterate_has_the_base_index(seed: u64) {
        let nf = random_normal_form(&mut rng(seed));
        prop_assert_eq!(nf.index(1).unwrap(), nf.i_base);
    }

    #[test]
    fn index_stays_near_the_mean(seed: u64) {
        let nf = random_normal_form(&mut rng(seed));
        prop_assert!(nf.mean_index_bound_check(500).unwrap());
        let mean = nf.mean_index().enclose(64).unwrap().midpoint();
        for m in 1..=500u64 {
            let dev = (ratio(nf.index(m).unwrap(), 1) - mean.mul_int(m)).abs();
            prop_assert!(dev <= ratio(nf.iteration_bound(), 1) + ratio(1, 1_000_000));
        }
    }

    #[test]
    fn nullity_is_even_periodic(seed: u64) {
        let nf = random_normal_form(&mut rng(seed));
        let period = nf.analytical_period(2).unwrap();
        prop_assert_eq!(period % 4, 0);
        for m in 1..=60u64 {
            prop_assert!(nf.nullity(m).unwrap() <= nf.nullity(period).unwrap());
        }
    }

    #[test]
    fn bumpy_formulas_agree(seed: u64) {
        let cfg = random_bumpy(&mut rng(seed), 1..=3);
        let nf = cfg.to_normal_form();
        for m in 1..=300u64 {
            let i = cfg.index_via_ceilings(m).unwrap();
            prop_assert_eq!(i, cfg.index_via_fractions(m).unwrap());
            prop_assert_eq!(i, nf.index(m).unwrap());
            if (m - 1) % u64::from(cfg.p_bar()) != 0 {
                continue;
            }
            match cfg.classify_interval(m) {
                Ok(c) => prop_assert_eq!(c.index, i),
                Err(e) => prop_assert!(matches!(e, Error::Boundary(_)), "{e}"),
            }
        }
    }

    #[test]
    fn decomposition_round_trips(seed: u64, t in 0u64..100_000) {
        let cfg = random_bumpy(&mut rng(seed), 1..=3);
        let m = u64::from(cfg.p_bar()) * t + 1;
        let (l, big_l) = cfg.decompose(m).unwrap();
        prop_assert_eq!(cfg.compose(l, big_l), m as i64);
        prop_assert!((0..=i64::from(cfg.n_half())).contains(&big_l));
    }

    #[test]
    fn betti_closed_form_matches_the_series(n in 2u32..=20, odd_p in 2u32..=9) {
        let p = if n % 2 == 0 { 2 } else { odd_p };
        let spec = SpaceFormSpec::new(n, p).unwrap();
        let series = poincare_coeffs(&spec, 600);
        for (q, s) in series.iter().enumerate() {
            prop_assert_eq!(i64::from(betti(&spec, q as u64)), *s);
        }
        let avg = average_betti(&spec);
        let n = i64::from(n);
        let expected = if n % 2 == 1 { ratio(n + 1, 2 * (n - 1)) } else { ratio(n, 2 * (n - 1)) };
        prop_assert_eq!(avg, expected);
    }
}
