//! Coordinate-wise injections of ℤ×ℕ: the first coordinate is translated,
//! the second is moved by a scalar rule table except on a few rows whose
//! image depends on the first coordinate through an eventually periodic
//! column sequence.

use std::collections::{BTreeMap, HashMap};
#[cfg(test)]
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::json::bigint;
use crate::orbit::expansive_bound;
use crate::ranges::{range_report, PieceSource, RangeReport};
use crate::{Domain, MapError, RuleInjection};

/// Value as a function of the first coordinate `n`: `low` for
/// `n ≤ threshold`, then `pre`, then `period` repeated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSeq {
    #[serde(with = "bigint")]
    pub threshold: BigInt,
    #[serde(with = "bigint")]
    pub low: BigInt,
    #[serde(with = "vec_bigint")]
    pub pre: Vec<BigInt>,
    #[serde(with = "vec_bigint")]
    pub period: Vec<BigInt>,
}

mod vec_bigint {
    use super::*;
    use crate::json::JsonInt;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().cloned().map(JsonInt).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?.into_iter().map(|j| j.0).collect())
    }
}

impl ColumnSeq {
    pub fn at(&self, n: &BigInt) -> &BigInt {
        if *n <= self.threshold {
            return &self.low;
        }
        let i = (n - &self.threshold - BigInt::one()).to_usize().unwrap_or(usize::MAX);
        if i < self.pre.len() {
            return &self.pre[i];
        }
        let p = self.period.len();
        let k = ((n - &self.threshold - BigInt::one() - BigInt::from(self.pre.len())) % BigInt::from(p))
            .to_usize()
            .unwrap();
        &self.period[k]
    }

    /// First `n` from which the sequence is purely periodic.
    pub fn base(&self) -> BigInt {
        &self.threshold + 1 + BigInt::from(self.pre.len())
    }

    fn values(&self) -> impl Iterator<Item = &BigInt> {
        std::iter::once(&self.low).chain(self.pre.iter()).chain(self.period.iter())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductInjection {
    #[serde(with = "bigint")]
    shift: BigInt,
    second: RuleInjection,
    overrides: BTreeMap<u64, ColumnSeq>,
}

/// Outcome of the backward-chain automaton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProductCore {
    /// no infinite backward chain exists
    Empty,
    /// an infinite backward chain runs through this row and column phase
    NonEmpty { row: u64, phase: u64 },
    Undecided(String),
}

impl ProductInjection {
    /// `second` acts on ℕ₁ and must leave the override rows undefined.
    pub fn new(shift: BigInt, second: RuleInjection, overrides: BTreeMap<u64, ColumnSeq>) -> Result<Self, MapError> {
        let mut problems = Vec::new();
        if second.domain() != Domain::NatFromOne {
            problems.push("second coordinate must act on ℕ₁".to_string());
        }
        for (row, seq) in &overrides {
            if *row == 0 {
                problems.push("row 0 is outside ℕ₁".into());
            }
            if second.try_apply(&BigInt::from(*row)).is_some() {
                problems.push(format!("row {row} is both overridden and covered by the rule table"));
            }
            if seq.period.is_empty() {
                problems.push(format!("row {row}: empty period"));
            }
            if seq.values().any(|v| *v < BigInt::one()) {
                problems.push(format!("row {row}: column value outside ℕ₁"));
            }
        }
        if !problems.is_empty() {
            return Err(MapError::Structural(problems));
        }
        Ok(ProductInjection { shift, second, overrides })
    }

    pub fn shift(&self) -> &BigInt {
        &self.shift
    }

    pub fn second(&self) -> &RuleInjection {
        &self.second
    }

    pub fn overrides(&self) -> &BTreeMap<u64, ColumnSeq> {
        &self.overrides
    }

    pub fn try_apply(&self, n: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
        if *m < BigInt::one() {
            return None;
        }
        let n2 = n + &self.shift;
        if let Some(row) = m.to_u64() {
            if let Some(seq) = self.overrides.get(&row) {
                return Some((n2, seq.at(n).clone()));
            }
        }
        self.second.try_apply(m).map(|v| (n2, v))
    }

    pub fn preimage(&self, n2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
        if *m2 < BigInt::one() {
            return None;
        }
        let n = n2 - &self.shift;
        for (row, seq) in &self.overrides {
            if seq.at(&n) == m2 {
                return Some((n, BigInt::from(*row)));
            }
        }
        self.second.preimage(m2).map(|m| (n, m))
    }

    /// Common (base, period) beyond which all column sequences are periodic.
    pub fn periodic_regime(&self) -> (BigInt, u64) {
        let base = self.overrides.values().map(|s| s.base()).max().unwrap_or_else(BigInt::zero);
        let p = self.overrides.values().fold(1u64, |acc, s| acc.lcm(&(s.period.len() as u64)));
        (base, p)
    }

    fn thresholds(&self) -> BigInt {
        self.overrides.values().map(|s| s.threshold.clone()).min().unwrap_or_else(BigInt::zero)
    }

    /// Backward chains move to column n+1 and, outside a bounded set of rows,
    /// strictly lower rows; so an infinite chain exists iff the finite graph
    /// on (row, column phase) has a cycle.
    pub fn core_certificate(&self) -> ProductCore {
        if self.shift != BigInt::from(-1) {
            return ProductCore::Undecided("only shift −1 is analysed".into());
        }
        if !self.second.all_slopes_expansive() {
            return ProductCore::Undecided("second coordinate is not expansive".into());
        }
        let mut bound = expansive_bound(&self.second);
        for (row, seq) in &self.overrides {
            bound = bound.max(BigInt::from(*row));
            for v in seq.values() {
                bound = bound.max(v.clone());
            }
        }
        let b = bound.to_u64().unwrap_or(u64::MAX);
        if b > 1 << 16 {
            return ProductCore::Undecided("row bound too large".into());
        }
        let (base, p) = self.periodic_regime();
        let succ = |v: u64, phase: u64| -> Vec<(u64, u64)> {
            let ph = (phase + 1) % p;
            let n = &base + BigInt::from(ph);
            let vb = BigInt::from(v);
            let mut out = Vec::new();
            for (row, seq) in &self.overrides {
                if *seq.at(&n) == vb {
                    out.push((*row, ph));
                }
            }
            if let Some(m) = self.second.preimage(&vb) {
                if let Some(m) = m.to_u64().filter(|m| *m <= b && !self.overrides.contains_key(m)) {
                    out.push((m, ph));
                }
            }
            out
        };
        // iterative three-colour DFS
        let mut colour: HashMap<(u64, u64), u8> = HashMap::new();
        for v in 1..=b {
            for ph in 0..p {
                if colour.contains_key(&(v, ph)) {
                    continue;
                }
                let mut stack = vec![((v, ph), succ(v, ph), 0usize)];
                colour.insert((v, ph), 1);
                while let Some((node, next, i)) = stack.last_mut() {
                    if *i < next.len() {
                        let nb = next[*i];
                        *i += 1;
                        match colour.get(&nb) {
                            Some(1) => return ProductCore::NonEmpty { row: nb.0, phase: nb.1 },
                            Some(_) => {}
                            None => {
                                colour.insert(nb, 1);
                                let s = succ(nb.0, nb.1);
                                stack.push((nb, s, 0));
                            }
                        }
                    } else {
                        colour.insert(*node, 2);
                        stack.pop();
                    }
                }
            }
        }
        ProductCore::Empty
    }
}

/// Disjointness (and, if asked, covering) of the union of ranges of product
/// maps, column by column over a finite set of representative target columns.
pub fn product_range_report(maps: &[&ProductInjection], require_cover: bool) -> RangeReport {
    let lo = maps.iter().map(|f| f.thresholds() + f.shift()).min().unwrap_or_else(BigInt::zero) - 1;
    let hi = maps
        .iter()
        .map(|f| {
            let (base, p) = f.periodic_regime();
            base + f.shift() + BigInt::from(p)
        })
        .max()
        .unwrap_or_else(BigInt::zero);
    let p_all = maps.iter().fold(1u64, |acc, f| acc.lcm(&f.periodic_regime().1));
    let seconds: Vec<&RuleInjection> = maps.iter().map(|f| &f.second).collect();
    let mut col = lo;
    let stop = hi + BigInt::from(p_all);
    while col <= stop {
        let mut points = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            let src = &col - f.shift();
            for (row, seq) in &f.overrides {
                points.push((
                    seq.at(&src).clone(),
                    PieceSource::Exception { map: i, key: format!("({src},{row})") },
                ));
            }
        }
        let mut r = range_report(&seconds, &points, Domain::NatFromOne);
        if !r.disjoint() || (require_cover && !r.covers()) || !r.domain_violations.is_empty() {
            if !require_cover {
                r.uncovered = None;
                r.cover_undecided = false;
            }
            if let Some(u) = r.uncovered.take() {
                r.uncovered = Some(format!("({col},{u})"));
            }
            for c in &mut r.collisions {
                c.witness = format!("({col},{})", c.witness);
            }
            return r;
        }
        col += 1;
    }
    RangeReport::default()
}
