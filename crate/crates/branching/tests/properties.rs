//! Structural identities of branching systems on random indices and words.

use std::collections::{BTreeMap, BTreeSet};

use permrep_branching::{coding, core_of, validate_branching, BranchingSystem};
use permrep_maps::{big, Affine, BigInt, Domain, Index, RuleInjection};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

fn nat_map(c: i64, table: &[(i64, i64)]) -> RuleInjection {
    let exceptions: BTreeMap<BigInt, BigInt> = table.iter().map(|&(k, v)| (big(k), big(v))).collect();
    RuleInjection::new(Domain::NatFromOne, 1, vec![(0, Affine::new(2, c))], exceptions, BTreeSet::new()).unwrap()
}

fn systems() -> Vec<BranchingSystem> {
    let canonical =
        BranchingSystem::new(RuleInjection::affine(Domain::Integers, 2, 1), RuleInjection::affine(Domain::Integers, 2, 0)).unwrap();
    let kawamura_12 = BranchingSystem::new(nat_map(-1, &[(1, 2), (2, 4)]), nat_map(0, &[(1, 3), (2, 1)])).unwrap();
    let realization2 = BranchingSystem::new(
        RuleInjection::new(Domain::NatFromOne, 2, vec![(1, Affine::new(2, 1)), (0, Affine::new(2, -3))], Default::default(), Default::default())
            .unwrap(),
        nat_map(0, &[]),
    )
    .unwrap();
    // odd l ↦ 2l+1, even l ↦ 2l paired with its complement
    let rho13 = BranchingSystem::new(
        RuleInjection::new(Domain::Integers, 2, vec![(1, Affine::new(2, -1)), (0, Affine::new(2, 2))], Default::default(), Default::default())
            .unwrap(),
        RuleInjection::new(Domain::Integers, 2, vec![(1, Affine::new(2, 1)), (0, Affine::new(2, 0))], Default::default(), Default::default())
            .unwrap(),
    )
    .unwrap();
    let all = vec![canonical, kawamura_12, realization2, rho13];
    for s in &all {
        assert!(validate_branching(s).valid);
    }
    all
}

fn index_for(sys: &BranchingSystem, n: i64) -> Index {
    match sys.domain() {
        Domain::Integers => Index::int(n),
        _ => Index::int(n.abs() + 1),
    }
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(1u8..=2, 0..6)
}

proptest! {
    #![proptest_config(config())]

    /// If S_αS_β* sends k to h then S_βS_α* sends h back to k.
    #[test]
    fn coding_symmetry(which in 0usize..4, n in -500i64..500, a in word(), b in word()) {
        let sys = &systems()[which];
        let k = index_for(sys, n);
        if let Some(h) = sys.word_map(&a, &b, &k) {
            prop_assert_eq!(sys.word_map(&b, &a, &h), Some(k));
        }
    }

    #[test]
    fn exactly_one_preimage(which in 0usize..4, n in -5000i64..5000) {
        let sys = &systems()[which];
        let k = index_for(sys, n);
        let hits = [&sys.sigma1, &sys.sigma2].iter().filter(|s| s.preimage(&k).is_some()).count();
        prop_assert_eq!(hits, 1);
    }

    /// The coding of σᵢ(n) is i followed by the coding of n.
    #[test]
    fn one_step_shift(which in 0usize..4, n in -500i64..500, i in 1u8..=2) {
        let sys = &systems()[which];
        let k = index_for(sys, n);
        let image = sys.sigma(i).try_apply(&k).unwrap();
        let c = coding(sys, &k, 16).unwrap();
        let ci = coding(sys, &image, 17).unwrap();
        prop_assert_eq!(ci.digits[0], i);
        prop_assert_eq!(&ci.digits[1..], &c.digits[..]);
    }
}

#[test]
fn cores_are_invariant_and_permuted() {
    for sys in systems() {
        for s in [sys.sigma1.as_rule().unwrap(), sys.sigma2.as_rule().unwrap()] {
            let core = core_of(s, 10_000);
            assert!(core.complete);
            let members = core.members();
            let image: BTreeSet<BigInt> = members.iter().map(|x| s.apply(x).unwrap()).collect();
            assert_eq!(image, members);
        }
    }
}
