use std::collections::{BTreeMap, BTreeSet};

use permrep_branching::{is_pure, validate_branching, BranchingSystem, Purity};
use permrep_classify::*;
use permrep_extension::{
    build_tau, coding_orbit_count, count_extensions, matchings, verify_q2, ExtensionCount, Q2System, DEFAULT_BUDGET,
};
use permrep_maps::{Affine, Domain, Index, RuleInjection};

const W: u64 = 2000;

fn parity_map(odd: (i64, i64), even: (i64, i64)) -> RuleInjection {
    RuleInjection::new(
        Domain::Integers,
        2,
        vec![(1, Affine::new(odd.0, odd.1)), (0, Affine::new(even.0, even.1))],
        BTreeMap::new(),
        BTreeSet::new(),
    )
    .unwrap()
}

fn shift(h: i64) -> RuleInjection {
    RuleInjection::affine(Domain::Integers, 1, h)
}

fn canonical_q2() -> Q2System {
    Q2System::from_rules(RuleInjection::affine(Domain::Integers, 2, 0), shift(1)).unwrap()
}

/// σ₂ from s_{12,1}+s_{22,2}, τ = l+2.
fn rho_23() -> Q2System {
    Q2System::from_rules(parity_map((2, -1), (2, 0)), shift(2)).unwrap()
}

/// σ₂ from s_{21,1}+s_{11,2}, τ = l−2.
fn rho_14() -> Q2System {
    Q2System::from_rules(parity_map((2, 0), (2, 3)), shift(-2)).unwrap()
}

fn rho_3() -> Q2System {
    Q2System::from_rules(RuleInjection::affine(Domain::Integers, 2, 0), shift(3)).unwrap()
}

fn word(s: &str) -> MultiIndex {
    MultiIndex::parse(s).unwrap()
}

fn int(i: &Index) -> i64 {
    i64::try_from(i.as_int().unwrap().clone()).unwrap()
}

#[test]
fn irreducibility() {
    assert!(is_irreducible_pi(&word("12")));
    assert!(!is_irreducible_pi(&word("11")));
    assert!(!is_irreducible_pi(&word("(12)")));
    assert!(normalize_multiindex(&[1, 2, 1, 2], None).unwrap().is_proper_power());
}

#[test]
fn kawamura_tables() {
    let s = kawamura_finite(&word("12")).unwrap();
    let at = |f: &permrep_maps::Injection, n: i64| int(&f.try_apply(&Index::int(n)).unwrap());
    assert_eq!([at(&s.sigma1, 1), at(&s.sigma1, 2), at(&s.sigma1, 3), at(&s.sigma1, 7)], [2, 4, 5, 13]);
    assert_eq!([at(&s.sigma2, 1), at(&s.sigma2, 2), at(&s.sigma2, 3)], [3, 1, 6]);
    // S₁S₂ e₂ = e₂
    assert_eq!(at(&s.sigma1, at(&s.sigma2, 2)), 2);
    let one = kawamura_finite(&word("1")).unwrap();
    assert_eq!([at(&one.sigma1, 1), at(&one.sigma1, 2), at(&one.sigma2, 1), at(&one.sigma2, 2)], [1, 3, 2, 4]);
}

#[test]
fn infinite_index_system() {
    let sys = kawamura_infinite(&word("(12)")).unwrap();
    assert!(validate_branching(&sys).valid);
    for i in [1, 2] {
        assert_eq!(is_pure(sys.sigma(i), DEFAULT_BUDGET), Purity::Pure);
    }
    assert_eq!(count_extensions(&sys, DEFAULT_BUDGET).unwrap(), ExtensionCount::Finite(1));
    let part = o2_components(&sys, 340, DEFAULT_BUDGET).unwrap();
    assert!(!part.exact);
    let class = classify_o2_component(&sys, &part, 0, 32).unwrap();
    assert_eq!(class, RepClass::InfinitePI { tail: word("(12)") });
}

#[test]
fn o2_components_of_rho_14() {
    let q = rho_14();
    let part = o2_components(&q.branching(), W, DEFAULT_BUDGET).unwrap();
    assert_eq!(part.len(), 2);
    let mut classes = Vec::new();
    for c in &part.components {
        let signs: BTreeSet<bool> = c.sample.iter().map(|n| int(n) >= 0).collect();
        assert_eq!(signs.len(), 1, "component mixes signs");
        classes.push(classify_o2_component(&q.branching(), &part, c.id, 64).unwrap());
    }
    assert!(classes.contains(&RepClass::FinitePI { index: word("11"), irreducible: false }));
    assert!(classes.contains(&RepClass::FinitePI { index: word("22"), irreducible: false }));
    assert_eq!(part.components.iter().map(|c| c.window_count as u64).sum::<u64>(), W);
}

/// Non-negative and negative indices are separately invariant.
#[test]
fn canonical_restriction_splits() {
    let part = o2_components(&canonical_q2().branching(), W, DEFAULT_BUDGET).unwrap();
    assert_eq!(part.len(), 2);
    assert_eq!(o2_components(&ones_plus_twos(2).unwrap(), W, DEFAULT_BUDGET).unwrap().len(), 2);
}

#[test]
fn q2_component_counts() {
    assert_eq!(q2_components(&canonical_q2(), W, DEFAULT_BUDGET).unwrap().len(), 1);
    let p23 = q2_components(&rho_23(), W, DEFAULT_BUDGET).unwrap();
    assert_eq!(p23.len(), 2);
    for c in &p23.components {
        let parity: BTreeSet<i64> = c.sample.iter().map(|n| int(n).rem_euclid(2)).collect();
        assert_eq!(parity.len(), 1);
        assert_eq!(classify_component(&rho_23(), &p23, c.id, 64).unwrap(), RepClass::CanonicalQ2);
    }
    assert_eq!(q2_components(&rho_14(), W, DEFAULT_BUDGET).unwrap().len(), 1);
    let p3 = q2_components(&rho_3(), W, DEFAULT_BUDGET).unwrap();
    assert_eq!(p3.len(), 2);
    for c in &p3.components {
        let in3: BTreeSet<bool> = c.sample.iter().map(|n| int(n) % 3 == 0).collect();
        assert_eq!(in3.len(), 1);
    }
}

#[test]
fn classes_of_components() {
    let q = canonical_q2();
    let part = q2_components(&q, W, DEFAULT_BUDGET).unwrap();
    assert_eq!(classify_component(&q, &part, 0, 64).unwrap(), RepClass::CanonicalQ2);

    let q = rho_14();
    let part = q2_components(&q, W, DEFAULT_BUDGET).unwrap();
    assert!(matches!(classify_component(&q, &part, 0, 64).unwrap(), RepClass::NotPermutativelyDecomposable { .. }));

    let q = rho_3();
    let part = q2_components(&q, W, DEFAULT_BUDGET).unwrap();
    let other = part.components.iter().find(|c| c.sample.iter().all(|n| int(n) % 3 != 0)).unwrap();
    assert_eq!(coding_orbit_count(&other.cycles), 2);
    assert_eq!(
        classify_component(&q, &part, other.id, 64).unwrap(),
        RepClass::FinitePI { index: word("12"), irreducible: true }
    );
}

#[test]
fn regularity() {
    let mf = |s: &BranchingSystem| regularity_verdict(s, W, 64, DEFAULT_BUDGET).verdict;
    assert_eq!(mf(&kawamura_finite(&word("12")).unwrap()), RegularityVerdict::MultiplicityFree);
    assert_eq!(mf(&canonical_q2().branching()), RegularityVerdict::MultiplicityFree);
    let sys = kawamura_finite(&word("1212")).unwrap();
    match mf(&sys) {
        RegularityVerdict::NotRegular { index, word, image } => {
            assert!(word.len() <= 8);
            assert_eq!(sys.apply_word(&word, &index), Some(image.clone()));
            assert_ne!(index, image);
            let (a, b) = (permrep_branching::coding(&sys, &index, 64).unwrap(), permrep_branching::coding(&sys, &image, 64).unwrap());
            assert_eq!(a.digits, b.digits);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn decompositions() {
    let d = q2_decomposable(&canonical_q2(), W, 64, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.decomposable, Some(true));
    assert_eq!(d.components, vec![RepClass::CanonicalQ2]);

    let sys = ones_plus_twos(2).unwrap();
    let m = matchings(&sys, DEFAULT_BUDGET, 4).unwrap();
    let q = build_tau(&sys, &m[0], DEFAULT_BUDGET).unwrap();
    assert!(verify_q2(&q, W, 8).passed);
    let d = q2_decomposable(&q, W, 64, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.decomposable, Some(false));
    assert!(matches!(d.components[0], RepClass::NotPermutativelyDecomposable { .. }));

    let d = q2_decomposable(&rho_3(), W, 64, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.decomposable, Some(true));
    assert_eq!(d.components, vec![RepClass::CanonicalQ2, RepClass::FinitePI { index: word("12"), irreducible: true }]);
}

#[test]
fn flip_flop() {
    assert_eq!(flipflop_image(&word("1")), word("2"));
    assert_eq!(flipflop_image(&word("12")), word("21"));
    let flipped = canonical_q2().branching().flipped();
    assert_eq!(count_extensions(&flipped, DEFAULT_BUDGET).unwrap(), ExtensionCount::Finite(1));
}

#[test]
fn ones_and_twos() {
    for k in 2..=4 {
        let sys = ones_plus_twos(k).unwrap();
        assert!(validate_branching(&sys).valid);
        assert_eq!(count_extensions(&sys, DEFAULT_BUDGET).unwrap(), ExtensionCount::Finite(k as u128));
        assert!(count_extensions(&kawamura_finite(&MultiIndex::finite(&vec![1; k]).unwrap()).unwrap(), DEFAULT_BUDGET).is_err());
    }
}
