use std::collections::BTreeMap;

use permrep_branching::{is_pure, BranchingSystem, Count, OrbitStructure, Purity};
use permrep_maps::{core_set, CoreKind, Index, Injection};
use serde::Serialize;

use crate::ExtError;

/// Core cycles of σ₁ and σ₂, each in map order from its least member,
/// sorted by (length, least member).
#[derive(Clone, Debug, Serialize)]
pub struct CoreCycles {
    pub sigma1: Vec<Vec<Index>>,
    pub sigma2: Vec<Vec<Index>>,
}

impl CoreCycles {
    pub fn structure(&self, i: u8) -> OrbitStructure {
        let side = if i == 1 { &self.sigma1 } else { &self.sigma2 };
        OrbitStructure::from_lengths(side.iter().map(|c| c.len()), Count::Finite(0))
    }

    fn by_length(side: &[Vec<Index>]) -> BTreeMap<usize, Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in side.iter().enumerate() {
            m.entry(c.len()).or_default().push(i);
        }
        m
    }
}

fn side_cycles(f: &Injection, budget: u64) -> Result<Vec<Vec<Index>>, ExtError> {
    match f {
        Injection::Rule(r) => {
            let c = core_set(r, budget);
            if c.kind == CoreKind::WholeDomain {
                return Err(ExtError::Inconclusive("σ is onto; infinite core orbits are not handled".into()));
            }
            if !c.complete {
                return Err(ExtError::Inconclusive(format!("core search incomplete at |x| ≤ {}", c.bound)));
            }
            Ok(c.cycles.into_iter().map(|cy| cy.into_iter().map(Index::Int).collect()).collect())
        }
        Injection::Product(_) => match is_pure(f, budget) {
            Purity::Pure => Ok(Vec::new()),
            Purity::NotPure { witness } => {
                Err(ExtError::Inconclusive(format!("product map with nonempty core ({})", witness.join(", "))))
            }
            Purity::Inconclusive(why) => Err(ExtError::Inconclusive(why)),
        },
    }
}

pub fn core_cycles(sys: &BranchingSystem, budget: u64) -> Result<CoreCycles, ExtError> {
    Ok(CoreCycles { sigma1: side_cycles(&sys.sigma1, budget)?, sigma2: side_cycles(&sys.sigma2, budget)? })
}

/// σ₁-cycle `sigma1_cycle` is sent onto σ₂-cycle `sigma2_cycle`, its first
/// point landing `shift` steps along.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub sigma1_cycle: usize,
    pub sigma2_cycle: usize,
    pub shift: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrbitMatching {
    pub pairs: Vec<MatchedPair>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtensionCount {
    Finite(u128),
    CountablyInfinite,
    Uncountable,
}

#[derive(Clone, Debug, Serialize)]
pub enum Extendibility {
    Extendible {
        count: ExtensionCount,
        /// the first matchings in canonical order
        matchings: Vec<OrbitMatching>,
    },
    NotExtendible {
        sigma1: OrbitStructure,
        sigma2: OrbitStructure,
        /// a cycle length occurring a different number of times
        mismatch_length: usize,
    },
    Inconclusive(String),
}

impl Extendibility {
    pub fn is_extendible(&self) -> Option<bool> {
        match self {
            Extendibility::Extendible { .. } => Some(true),
            Extendibility::NotExtendible { .. } => Some(false),
            Extendibility::Inconclusive(_) => None,
        }
    }
}

/// Extendible iff the two cores carry the same orbit structure.
pub fn extendible(sys: &BranchingSystem, budget: u64) -> Extendibility {
    let cores = match core_cycles(sys, budget) {
        Ok(c) => c,
        Err(e) => return Extendibility::Inconclusive(e.to_string()),
    };
    let (a, b) = (CoreCycles::by_length(&cores.sigma1), CoreCycles::by_length(&cores.sigma2));
    let lengths: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    for l in lengths {
        if a.get(&l).map_or(0, Vec::len) != b.get(&l).map_or(0, Vec::len) {
            return Extendibility::NotExtendible { sigma1: cores.structure(1), sigma2: cores.structure(2), mismatch_length: l };
        }
    }
    Extendibility::Extendible { count: ExtensionCount::Finite(count_of(&a)), matchings: enumerate(&a, &b, 64) }
}

fn count_of(groups: &BTreeMap<usize, Vec<usize>>) -> u128 {
    groups
        .iter()
        .map(|(&l, v)| (1..=v.len() as u128).product::<u128>() * (l as u128).pow(v.len() as u32))
        .product()
}

pub fn count_extensions(sys: &BranchingSystem, budget: u64) -> Result<ExtensionCount, ExtError> {
    match extendible(sys, budget) {
        Extendibility::Extendible { count, .. } => Ok(count),
        Extendibility::NotExtendible { mismatch_length, .. } => {
            Err(ExtError::NotExtendible(format!("cores differ in the number of {mismatch_length}-cycles")))
        }
        Extendibility::Inconclusive(why) => Err(ExtError::Inconclusive(why)),
    }
}

/// All matchings (up to `cap`) in canonical order: lengths ascending, then
/// permutations lexicographically, then shifts lexicographically.
pub fn matchings(sys: &BranchingSystem, budget: u64, cap: usize) -> Result<Vec<OrbitMatching>, ExtError> {
    let cores = core_cycles(sys, budget)?;
    let (a, b) = (CoreCycles::by_length(&cores.sigma1), CoreCycles::by_length(&cores.sigma2));
    if a.iter().map(|(l, v)| (l, v.len())).ne(b.iter().map(|(l, v)| (l, v.len()))) {
        return Err(ExtError::NotExtendible("core orbit structures differ".into()));
    }
    Ok(enumerate(&a, &b, cap))
}

fn enumerate(a: &BTreeMap<usize, Vec<usize>>, b: &BTreeMap<usize, Vec<usize>>, cap: usize) -> Vec<OrbitMatching> {
    let mut out = vec![OrbitMatching::default()];
    for (&l, left) in a {
        let right = &b[&l];
        let mut options: Vec<Vec<MatchedPair>> = Vec::new();
        for perm in permutations(left.len()) {
            let n = left.len();
            let combos = l.checked_pow(n as u32).unwrap_or(usize::MAX);
            for code in 0..combos {
                // base-l digits of `code`, last position fastest
                let mut c = code;
                let mut shifts = vec![0usize; n];
                for k in (0..n).rev() {
                    shifts[k] = c % l;
                    c /= l;
                }
                options.push(
                    (0..n)
                        .map(|i| MatchedPair { sigma1_cycle: left[i], sigma2_cycle: right[perm[i]], shift: shifts[i] })
                        .collect(),
                );
                if options.len() >= cap {
                    break;
                }
            }
            if options.len() >= cap {
                break;
            }
        }
        let mut next = Vec::new();
        'outer: for m in &out {
            for o in &options {
                let mut pairs = m.pairs.clone();
                pairs.extend(o.iter().cloned());
                next.push(OrbitMatching { pairs });
                if next.len() >= cap {
                    break 'outer;
                }
            }
        }
        out = next;
    }
    out
}

/// Permutations of 0..n in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_order() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn enumeration_counts() {
        let a: BTreeMap<usize, Vec<usize>> = [(2, vec![0, 1])].into_iter().collect();
        let b = a.clone();
        let all = enumerate(&a, &b, 1000);
        assert_eq!(all.len() as u128, count_of(&a));
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].pairs[0].shift, 0);
        assert_eq!(all[1].pairs[1].shift, 1);
    }
}
