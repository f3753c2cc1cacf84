use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use permrep_branching::BranchingSystem;
use permrep_maps::{Affine, ColumnSeq, Domain, ProductInjection, RuleInjection};

use crate::{ClassifyError, MultiIndex};

fn tail_map(c: i64, table: BTreeMap<BigInt, BigInt>) -> Result<RuleInjection, ClassifyError> {
    Ok(RuleInjection::new(Domain::NatFromOne, 1, vec![(0, Affine::new(2, c))], table, BTreeSet::new())?)
}

/// The system of type P(I) on ℕ₁ for a finite word I = (j₁…j_k): rows
/// 1..k are permuted so that S_I e_k = e_k, the tails are 2l−1 and 2l.
pub fn kawamura_finite(i: &MultiIndex) -> Result<BranchingSystem, ClassifyError> {
    let MultiIndex::Finite { word } = i else {
        return Err(ClassifyError::Invalid(format!("{i} is not finite")));
    };
    let k = word.len() as i64;
    let (mut t1, mut t2) = (BTreeMap::new(), BTreeMap::new());
    for (idx, &j) in word.iter().enumerate() {
        let l = idx as i64 + 1;
        let (a, b) = match (l, j) {
            (1, 2) => (k + 1, k),
            (1, _) => (k, k + 1),
            (_, 2) => (k + l, l - 1),
            _ => (l - 1, k + l),
        };
        t1.insert(BigInt::from(l), BigInt::from(a));
        t2.insert(BigInt::from(l), BigInt::from(b));
    }
    Ok(BranchingSystem::new(tail_map(-1, t1)?, tail_map(0, t2)?)?)
}

/// The coordinate-wise system on ℤ × ℕ₁ of an infinite index:
/// f_i(n, m) = (n−1, 2m−2+i) for m ≥ 2 and f_i(n, 1) = (n−1, p_n(i)), where
/// p_n is the identity for n ≤ 0 and p_n(1) = j_n otherwise.
pub fn kawamura_infinite(i: &MultiIndex) -> Result<BranchingSystem, ClassifyError> {
    let MultiIndex::EventuallyPeriodic { preperiod, period } = i else {
        return Err(ClassifyError::Invalid(format!("{i} is finite")));
    };
    let seq = |f: &dyn Fn(u8) -> i64, low: i64| ColumnSeq {
        threshold: BigInt::from(0),
        low: BigInt::from(low),
        pre: preperiod.iter().map(|&d| BigInt::from(f(d))).collect(),
        period: period.iter().map(|&d| BigInt::from(f(d))).collect(),
    };
    let row = |c: i64, s: ColumnSeq| -> Result<ProductInjection, ClassifyError> {
        let second = RuleInjection::new(
            Domain::NatFromOne,
            1,
            vec![(0, Affine::new(2, c))],
            BTreeMap::new(),
            [BigInt::from(1)].into_iter().collect(),
        )?;
        Ok(ProductInjection::new(BigInt::from(-1), second, [(1u64, s)].into_iter().collect())?)
    };
    let f1 = row(-1, seq(&|d| i64::from(d), 1))?;
    let f2 = row(0, seq(&|d| 3 - i64::from(d), 2))?;
    Ok(BranchingSystem::new(f1, f2)?)
}

/// `a` placed on the odd indices, `b` on the even ones (both on ℕ₁).
pub fn direct_sum(a: &BranchingSystem, b: &BranchingSystem) -> Result<BranchingSystem, ClassifyError> {
    let (Some((a1, a2)), Some((b1, b2))) = (a.rules(), b.rules()) else {
        return Err(ClassifyError::Invalid("direct sums need rule systems".into()));
    };
    if a1.domain() != Domain::NatFromOne || b1.domain() != Domain::NatFromOne {
        return Err(ClassifyError::Invalid("direct sums are formed on ℕ₁".into()));
    }
    let odd = |f: &RuleInjection| f.conjugate_embedding(2, -1, Domain::NatFromOne);
    let even = |f: &RuleInjection| f.conjugate_embedding(2, 0, Domain::NatFromOne);
    let s1 = odd(a1)?.union(&even(b1)?)?;
    let s2 = odd(a2)?.union(&even(b2)?)?;
    Ok(BranchingSystem::new(s1, s2)?)
}

/// P(1_k) ⊕ P(2_k).
pub fn ones_plus_twos(k: usize) -> Result<BranchingSystem, ClassifyError> {
    if k == 0 {
        return Err(ClassifyError::Invalid("k must be positive".into()));
    }
    direct_sum(&kawamura_finite(&MultiIndex::finite(&vec![1; k])?)?, &kawamura_finite(&MultiIndex::finite(&vec![2; k])?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permrep_branching::validate_branching;
    use permrep_maps::Index;

    #[test]
    fn word_cycle_holds() {
        for w in [vec![1u8], vec![2], vec![1, 2], vec![2, 2, 1], vec![1, 2, 1, 2]] {
            let sys = kawamura_finite(&MultiIndex::finite(&w).unwrap()).unwrap();
            assert!(validate_branching(&sys).valid);
            let k = Index::int(w.len() as i64);
            assert_eq!(sys.apply_word(&w, &k), Some(k));
        }
    }

    #[test]
    fn infinite_rows() {
        let sys = kawamura_infinite(&MultiIndex::periodic(&[], &[1, 2]).unwrap()).unwrap();
        assert!(validate_branching(&sys).valid);
        assert_eq!(sys.sigma1.try_apply(&Index::pair(1, 1)), Some(Index::pair(0, 1)));
        assert_eq!(sys.sigma1.try_apply(&Index::pair(2, 1)), Some(Index::pair(1, 2)));
        assert_eq!(sys.sigma2.try_apply(&Index::pair(2, 1)), Some(Index::pair(1, 1)));
        assert_eq!(sys.sigma2.try_apply(&Index::pair(0, 1)), Some(Index::pair(-1, 2)));
        assert_eq!(sys.sigma1.try_apply(&Index::pair(5, 3)), Some(Index::pair(4, 5)));
    }
}
