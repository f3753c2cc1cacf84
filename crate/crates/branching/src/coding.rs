use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use permrep_maps::{expansive_bound, Index, Injection};
use serde::Serialize;

use crate::{words, BranchError, BranchingSystem, Digit};

/// Eventually periodic tail `preperiod · period^∞` of a coding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodingTail {
    pub preperiod: Vec<Digit>,
    pub period: Vec<Digit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodingPrefix {
    pub digits: Vec<Digit>,
    /// set once the backward walk provably repeats
    pub tail: Option<CodingTail>,
    /// first index of the walk lying on the repeating loop
    #[serde(skip)]
    pub loop_entry: Option<Index>,
}

impl CodingPrefix {
    pub fn certified(&self) -> bool {
        self.tail.is_some()
    }

    /// Digit `k` (0-based) of the full coding, if known.
    pub fn digit(&self, k: usize) -> Option<Digit> {
        if let Some(d) = self.digits.get(k) {
            return Some(*d);
        }
        let t = self.tail.as_ref()?;
        if k < t.preperiod.len() {
            return Some(t.preperiod[k]);
        }
        Some(t.period[(k - t.preperiod.len()) % t.period.len()])
    }

    /// Equal as infinite words (both certified).
    pub fn same_word(&self, other: &CodingPrefix) -> Option<bool> {
        let (a, b) = (self.tail.as_ref()?, other.tail.as_ref()?);
        let n = a.preperiod.len().max(b.preperiod.len()) + a.period.len() * b.period.len();
        Some((0..n).all(|k| self.digit(k) == other.digit(k)))
    }
}

/// Column-periodic state for product systems so that the backward walk,
/// which moves one column per step, can still be seen to repeat.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Exact(Index),
    Phase(u64, BigInt),
}

struct Keyer {
    regime: Option<(BigInt, u64)>,
}

impl Keyer {
    fn new(sys: &BranchingSystem) -> Self {
        let regime = match (&sys.sigma1, &sys.sigma2) {
            (Injection::Product(a), Injection::Product(b)) if a.shift() == b.shift() && *a.shift() == BigInt::from(-1) => {
                let (ba, pa) = a.periodic_regime();
                let (bb, pb) = b.periodic_regime();
                // the preimage at column c reads the sequences at c + 1
                Some((ba.max(bb) - 1, pa.lcm(&pb)))
            }
            _ => None,
        };
        Keyer { regime }
    }

    fn key(&self, x: &Index) -> Key {
        match (&self.regime, x) {
            (Some((base, p)), Index::Pair(c, m)) if c >= base => {
                Key::Phase(((c - base) % BigInt::from(*p)).to_u64().unwrap(), m.clone())
            }
            _ => Key::Exact(x.clone()),
        }
    }
}

/// Coding of `n`: digit k is i when the k-th backward iterate lies in ran σᵢ.
/// The walk runs past `depth` (up to `4·depth + 64` steps) to certify a tail.
pub fn coding(sys: &BranchingSystem, n: &Index, depth: usize) -> Result<CodingPrefix, BranchError> {
    let keyer = Keyer::new(sys);
    let mut seen: HashMap<Key, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut walk: Vec<Index> = Vec::new();
    let mut x = n.clone();
    let limit = 4 * depth + 64;
    let mut tail = None;
    let mut loop_entry = None;
    for step in 0..limit {
        let k = keyer.key(&x);
        if let Some(&i) = seen.get(&k) {
            tail = Some(CodingTail { preperiod: digits[..i].to_vec(), period: digits[i..].to_vec() });
            loop_entry = Some(walk[i].clone());
            break;
        }
        seen.insert(k, step);
        let (d, m) = sys.split(&x)?;
        digits.push(d);
        walk.push(x);
        x = m;
    }
    let mut c = CodingPrefix { digits, tail, loop_entry };
    let full: Vec<Digit> = (0..depth).map_while(|k| c.digit(k)).collect();
    c.digits = full;
    Ok(c)
}

/// The unique (k, m) with n = σ₁^k(σ₂(m)), k ≥ 0.
pub fn factorize(sys: &BranchingSystem, n: &Index, budget: u64) -> Result<(u64, Index), BranchError> {
    let mut x = n.clone();
    let mut seen = HashSet::new();
    for k in 0..budget {
        if let Some(m) = sys.sigma2.preimage(&x) {
            return Ok((k, m));
        }
        if !seen.insert(x.clone()) {
            return Err(BranchError::InCore(n.to_string()));
        }
        x = sys
            .sigma1
            .preimage(&x)
            .ok_or_else(|| BranchError::Invalid(format!("{x} is in neither range")))?;
    }
    Err(BranchError::Inconclusive(format!("no factorization of {n} within {budget} steps")))
}

/// Shortest word α with S_αS_α* fixing e_{n0} and killing every other e_n.
pub fn separating_word(sys: &BranchingSystem, n0: &Index, others: &[Index], depth: usize) -> Result<Vec<Digit>, BranchError> {
    let c0 = coding(sys, n0, depth)?;
    let cs: Vec<CodingPrefix> = others.iter().map(|n| coding(sys, n, depth)).collect::<Result<_, _>>()?;
    let mut k = 0;
    for c in &cs {
        let agree = (0..depth).take_while(|&i| c.digit(i) == c0.digit(i) && c0.digit(i).is_some()).count();
        if agree >= depth || agree >= c0.digits.len() {
            return Err(BranchError::Inconclusive(format!("codings agree to depth {depth}")));
        }
        k = k.max(agree + 1);
    }
    Ok(c0.digits[..k].to_vec())
}

/// A cycle of the shift T = σᵢ⁻¹: its points carry the purely periodic
/// coding `word^∞`. Listed from the point whose word is the least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCycle {
    #[serde(with = "points")]
    pub points: Vec<BigInt>,
    pub word: Vec<Digit>,
}

mod points {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

impl WordCycle {
    pub fn root(&self) -> Vec<Digit> {
        words::primitive_root(&self.word).0
    }

    pub fn power(&self) -> usize {
        words::primitive_root(&self.word).1
    }
}

/// All shift cycles; exhaustive because with every slope ≥ 2 in modulus
/// the shift strictly shrinks |x| outside a computable bound.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftCycles {
    pub cycles: Vec<WordCycle>,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn shift_cycles(sys: &BranchingSystem, budget: u64) -> Result<ShiftCycles, BranchError> {
    let Some((s1, s2)) = sys.rules() else {
        return Err(BranchError::Inconclusive("shift cycles need scalar rule tables".into()));
    };
    if !s1.all_slopes_expansive() || !s2.all_slopes_expansive() {
        return Err(BranchError::Inconclusive("some branch has slope ±1".into()));
    }
    let bound = expansive_bound(s1).max(expansive_bound(s2));
    if bound > BigInt::from(budget) {
        return Err(BranchError::Inconclusive(format!("shift bound {bound} exceeds budget")));
    }
    let lo = sys.domain().lower_bound().unwrap_or_else(|| -bound.clone()).max(-bound.clone());
    let mut done: HashSet<BigInt> = HashSet::new();
    let mut cycles = Vec::new();
    let mut x0 = lo;
    while x0 <= bound {
        if !done.contains(&x0) {
            let mut path: Vec<(BigInt, Digit)> = Vec::new();
            let mut pos: HashMap<BigInt, usize> = HashMap::new();
            let mut x = x0.clone();
            loop {
                if done.contains(&x) {
                    break;
                }
                if let Some(&i) = pos.get(&x) {
                    let cyc = &path[i..];
                    let word: Vec<Digit> = cyc.iter().map(|p| p.1).collect();
                    let off = words::min_rotation_offset(&word);
                    let pts: Vec<BigInt> = cyc.iter().map(|p| p.0.clone()).collect();
                    cycles.push(WordCycle { points: rotate(&pts, off), word: words::rotate(&word, off) });
                    break;
                }
                let (d, m) = sys.split(&Index::Int(x.clone()))?;
                pos.insert(x.clone(), path.len());
                path.push((x.clone(), d));
                x = match m {
                    Index::Int(m) => m,
                    Index::Pair(..) => unreachable!(),
                };
            }
            done.extend(path.into_iter().map(|p| p.0));
        }
        x0 += 1;
    }
    cycles.sort_by(|a, b| (a.word.len(), &a.word, &a.points[0]).cmp(&(b.word.len(), &b.word, &b.points[0])));
    Ok(ShiftCycles { cycles, bound })
}

fn rotate<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v[i..].iter().chain(&v[..i]).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use permrep_maps::{Domain, RuleInjection};

    fn canonical() -> BranchingSystem {
        BranchingSystem::new(
            RuleInjection::affine(Domain::Integers, 2, 1),
            RuleInjection::affine(Domain::Integers, 2, 0),
        )
        .unwrap()
    }

    #[test]
    fn canonical_codings() {
        let s = canonical();
        let c = coding(&s, &Index::int(0), 8).unwrap();
        assert_eq!(c.digits, vec![2; 8]);
        assert_eq!(c.tail.unwrap().period, vec![2]);
        let c = coding(&s, &Index::int(-1), 8).unwrap();
        assert_eq!(c.digits, vec![1; 8]);
        // 6 = σ₂(3), 3 = σ₁(1), 1 = σ₁(0)
        let c = coding(&s, &Index::int(6), 5).unwrap();
        assert_eq!(c.digits, vec![2, 1, 1, 2, 2]);
    }

    #[test]
    fn canonical_factorization_and_shift_cycles() {
        let s = canonical();
        assert_eq!(factorize(&s, &Index::int(7), 100).unwrap(), (3, Index::int(0)));
        assert!(matches!(factorize(&s, &Index::int(-1), 100), Err(BranchError::InCore(_))));
        let sc = shift_cycles(&s, 1000).unwrap();
        let words: Vec<Vec<Digit>> = sc.cycles.iter().map(|c| c.word.clone()).collect();
        assert_eq!(words, vec![vec![1], vec![2]]);
    }
}
