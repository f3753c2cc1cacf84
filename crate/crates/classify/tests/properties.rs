//! Flip-flop and regularity invariants over random multi-indices.

use permrep_branching::{validate_branching, words};
use permrep_classify::*;
use permrep_extension::{count_extensions, extendible, DEFAULT_BUDGET};
use permrep_maps::Index;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(1u8..=2, 1..9)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn flipflop_is_an_involution(w in word(), pre in proptest::collection::vec(1u8..=2, 0..4)) {
        let f = MultiIndex::finite(&w).unwrap();
        prop_assert_eq!(flipflop_image(&flipflop_image(&f)), f);
        let p = MultiIndex::periodic(&pre, &w).unwrap();
        prop_assert_eq!(flipflop_image(&flipflop_image(&p)), p);
    }

    #[test]
    fn flipflop_preserves_verdicts(w in word()) {
        let sys = kawamura_finite(&MultiIndex::finite(&w).unwrap()).unwrap();
        let flipped = sys.flipped();
        prop_assert_eq!(extendible(&sys, DEFAULT_BUDGET).is_extendible(), extendible(&flipped, DEFAULT_BUDGET).is_extendible());
        let (a, b) = (regularity_verdict(&sys, 200, 32, DEFAULT_BUDGET), regularity_verdict(&flipped, 200, 32, DEFAULT_BUDGET));
        prop_assert_eq!(std::mem::discriminant(&a.verdict), std::mem::discriminant(&b.verdict));
    }

    /// The word cycle holds and primitive words give multiplicity-free,
    /// uniquely extendible systems; proper powers are not regular.
    #[test]
    fn finite_index_systems(w in word()) {
        let sys = kawamura_finite(&MultiIndex::finite(&w).unwrap()).unwrap();
        prop_assert!(validate_branching(&sys).valid);
        let k = Index::int(w.len() as i64);
        prop_assert_eq!(sys.apply_word(&w, &k), Some(k));
        let v = regularity_verdict(&sys, 200, 32, DEFAULT_BUDGET).verdict;
        if words::is_primitive(&w) {
            prop_assert_eq!(v, RegularityVerdict::MultiplicityFree);
            if w.len() >= 2 {
                prop_assert_eq!(count_extensions(&sys, DEFAULT_BUDGET).ok(), Some(permrep_extension::ExtensionCount::Finite(1)));
            }
        } else {
            prop_assert!(matches!(v, RegularityVerdict::NotRegular { .. }), "{:?}", v);
        }
    }
}
