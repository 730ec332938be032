use proptest::prelude::*;
use ucc_core::analytic::{self, PHI};
use ucc_core::entropy::{self, CheckOptions};
use ucc_core::{exec, parse_family, SetFamily};

fn family_strategy(max_n: u32, max_size: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..1u64 << n, 1..=max_size)
            .prop_map(move |masks| SetFamily::new(n, masks).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closure_fraction_is_one_iff_union_closed(f in family_strategy(6, 30)) {
        let frac = f.closure_fraction().unwrap();
        prop_assert_eq!(frac.num == frac.den, f.is_union_closed().unwrap());
        let len = f.len() as u64;
        // Every diagonal pair (A, A) is closed.
        prop_assert!(frac.num >= len);
    }

    #[test]
    fn closure_is_idempotent_and_union_closed(f in family_strategy(6, 12)) {
        let c = f.union_closure().unwrap();
        prop_assert!(c.is_union_closed().unwrap());
        prop_assert_eq!(c.union_closure().unwrap(), c.clone());
        prop_assert!(f.sets().iter().all(|&m| c.contains(m)));
    }

    #[test]
    fn uc_text_round_trips(f in family_strategy(10, 40)) {
        prop_assert_eq!(parse_family(&f.to_uc()).unwrap(), f);
    }

    #[test]
    fn every_check_holds(f in family_strategy(7, 40)) {
        let a = entropy::analyze(&f, &CheckOptions::default()).unwrap();
        prop_assert!(a.lower_bound.satisfied);
        prop_assert!(a.upper_bound.satisfied());
        prop_assert!(a.chain_rule.satisfied);
        prop_assert!(a.chain_rule.identity_error_bits.abs() <= 1e-9);
        if let Some(t) = &a.theorem {
            prop_assert!(!t.is_violation());
        }
    }

    #[test]
    fn union_entropy_is_bounded(f in family_strategy(7, 40)) {
        let h = entropy::union_distribution(&f).unwrap().entropy();
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= 2.0 * (f.len() as f64).log2() + 1e-9);
    }

    #[test]
    fn thread_count_does_not_change_results(f in family_strategy(8, 60)) {
        let one = exec::with_threads(1, || entropy::analyze(&f, &CheckOptions::default()).unwrap());
        let many = exec::with_threads(4, || entropy::analyze(&f, &CheckOptions::default()).unwrap());
        prop_assert_eq!(one, many);
    }

    #[test]
    fn f_is_symmetric_and_below_one(x in 1e-6..1.0 - 1e-6, y in 1e-6..1.0 - 1e-6) {
        let a = analytic::f_ratio(x, y).unwrap();
        let b = analytic::f_ratio(y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs());
        prop_assert!(a < 1.0);
        prop_assert!(a >= 1.0 / (2.0 * PHI) - 1e-12);
    }
}
