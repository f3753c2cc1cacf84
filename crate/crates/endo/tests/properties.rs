use permrep_endo::*;
use permrep_maps::big;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config() -> Config {
    Config { cases: 1000, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

#[derive(Clone, Copy, Debug)]
enum Letter {
    S(u8),
    SStar(u8),
    U(i64),
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![(1u8..=2).prop_map(Letter::S), (1u8..=2).prop_map(Letter::SStar), (-3i64..=3).prop_map(Letter::U)]
}

/// Operator product applied to e_l, rightmost letter first.
fn act(ls: &[Letter], l: i64) -> Option<i64> {
    let mut x = l;
    for &c in ls.iter().rev() {
        x = match c {
            Letter::S(i) => 2 * x + i64::from(i == 1),
            Letter::SStar(i) => {
                let r = i64::from(i == 1);
                if x.rem_euclid(2) != r {
                    return None;
                }
                (x - r) / 2
            }
            Letter::U(h) => x + h,
        };
    }
    Some(x)
}

fn as_term(c: Letter) -> Term {
    match c {
        Letter::S(i) => Term::s(i),
        Letter::SStar(i) => Term::s_star(i),
        Letter::U(h) => Term::u(h),
    }
}

fn normal_act(t: &Term, l: i64) -> Option<i64> {
    let mut ls: Vec<Letter> = t.alpha.iter().map(|&i| Letter::S(i)).collect();
    ls.push(Letter::U(t.upower));
    ls.extend(t.beta.iter().rev().map(|&i| Letter::SStar(i)));
    act(&ls, l)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normal_form_preserves_the_action(ls in proptest::collection::vec(letter(), 0..8)) {
        let t = ls.iter().try_fold(Term::one(), |acc, &c| acc.times(&as_term(c)));
        for l in -40..40 {
            let expect = act(&ls, l);
            let got = t.as_ref().and_then(|t| normal_act(t, l));
            prop_assert_eq!(got, expect, "{:?} at {}", ls, l);
        }
        if let Some(t) = t {
            if t.alpha.len() >= t.beta.len() {
                let (m, r, a) = term_branch(&t).unwrap();
                for l in -40i64..40 {
                    if l.rem_euclid(m as i64) as u64 == r {
                        prop_assert_eq!(Some(i64::try_from(a.eval(&big(l))).unwrap()), normal_act(&t, l));
                    }
                }
            }
        }
    }

    /// compile(S_α U^h) is the composition of the single-letter maps.
    #[test]
    fn compile_respects_words(alpha in proptest::collection::vec(1u8..=2, 0..6), h in -4i64..4) {
        let f = compile(&MonomialExpr::term(Term::new(alpha.clone(), h, vec![]))).unwrap();
        let mut g = compile(&MonomialExpr::term(Term::u(h))).unwrap();
        for &i in alpha.iter().rev() {
            g = compile(&MonomialExpr::term(Term::s(i))).unwrap().compose(&g).unwrap();
        }
        prop_assert!(f.equals(&g).unwrap());
    }
}
