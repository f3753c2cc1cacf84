use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use permrep_branching::{is_pure, validate_branching, BranchingSystem, Purity};
use permrep_maps::{Affine, Domain, Index, Injection, RuleInjection};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::matching::{core_cycles, OrbitMatching};
use crate::{ExtError, Q2System};

/// τ evaluated on demand from the factorization n = σ₁^k σ₂(m) ↦ σ₂^k σ₁(m),
/// with a finite table on the core of σ₁.
#[derive(Clone, Debug)]
pub struct LazyTau {
    pub(crate) sigma1: Injection,
    pub(crate) sigma2: Injection,
    core: HashMap<Index, Index>,
    core_inv: HashMap<Index, Index>,
}

impl LazyTau {
    pub fn apply(&self, n: &Index) -> Option<Index> {
        if let Some(v) = self.core.get(n) {
            return Some(v.clone());
        }
        let mut x = n.clone();
        let mut k = 0usize;
        loop {
            if let Some(m) = self.sigma2.preimage(&x) {
                let mut y = self.sigma1.try_apply(&m)?;
                for _ in 0..k {
                    y = self.sigma2.try_apply(&y)?;
                }
                return Some(y);
            }
            x = self.sigma1.preimage(&x)?;
            k += 1;
            if self.core.contains_key(&x) {
                // n = σ₁^k(c) with c on a core cycle: n is itself a core point
                return None;
            }
        }
    }

    pub fn preimage(&self, n: &Index) -> Option<Index> {
        if let Some(v) = self.core_inv.get(n) {
            return Some(v.clone());
        }
        let mut x = n.clone();
        let mut k = 0usize;
        loop {
            if let Some(m) = self.sigma1.preimage(&x) {
                let mut y = self.sigma2.try_apply(&m)?;
                for _ in 0..k {
                    y = self.sigma1.try_apply(&y)?;
                }
                return Some(y);
            }
            x = self.sigma2.preimage(&x)?;
            k += 1;
            if self.core_inv.contains_key(&x) {
                return None;
            }
        }
    }

    /// τ on the core of σ₁, sorted.
    pub fn core_table(&self) -> Vec<(Index, Index)> {
        let mut v: Vec<(Index, Index)> = self.core.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        v.sort();
        v
    }

    pub(crate) fn core_value(&self, n: &Index) -> Option<Index> {
        self.core.get(n).cloned()
    }

    pub(crate) fn core_points(&self) -> impl Iterator<Item = &Index> {
        self.core.keys()
    }
}

/// The unitary's index map: a certified closed form, or lazily evaluated.
#[derive(Clone, Debug)]
pub enum Tau {
    Rule(RuleInjection),
    Lazy(LazyTau),
}

impl Tau {
    pub fn apply(&self, n: &Index) -> Option<Index> {
        match (self, n) {
            (Tau::Rule(f), Index::Int(x)) => f.try_apply(x).map(Index::Int),
            (Tau::Rule(_), _) => None,
            (Tau::Lazy(t), _) => t.apply(n),
        }
    }

    pub fn preimage(&self, n: &Index) -> Option<Index> {
        match (self, n) {
            (Tau::Rule(f), Index::Int(x)) => f.preimage(x).map(Index::Int),
            (Tau::Rule(_), _) => None,
            (Tau::Lazy(t), _) => t.preimage(n),
        }
    }

    pub fn as_rule(&self) -> Option<&RuleInjection> {
        match self {
            Tau::Rule(f) => Some(f),
            Tau::Lazy(_) => None,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self, Tau::Rule(_))
    }
}

impl Serialize for Tau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Tau::Rule(f) => {
                let mut st = s.serialize_struct("Tau", 2)?;
                st.serialize_field("form", "closed")?;
                st.serialize_field("map", f)?;
                st.end()
            }
            Tau::Lazy(t) => {
                let mut st = s.serialize_struct("Tau", 2)?;
                st.serialize_field("form", "lazy")?;
                st.serialize_field("core_table", &t.core_table())?;
                st.end()
            }
        }
    }
}

/// The unique extension of a system whose isometries are both pure.
pub fn build_tau_pure(sys: &BranchingSystem, budget: u64) -> Result<Q2System, ExtError> {
    for i in [1u8, 2] {
        match is_pure(sys.sigma(i), budget) {
            Purity::Pure => {}
            Purity::NotPure { .. } => return Err(ExtError::NotPure(i)),
            Purity::Inconclusive(why) => return Err(ExtError::Inconclusive(why)),
        }
    }
    build_tau(sys, &OrbitMatching::default(), budget)
}

/// The extension attached to a matching of the core cycles.
pub fn build_tau(sys: &BranchingSystem, matching: &OrbitMatching, budget: u64) -> Result<Q2System, ExtError> {
    let report = validate_branching(sys);
    if !report.valid {
        return Err(ExtError::Invalid(format!("not a branching system (witness {:?})", report.witness())));
    }
    let cores = core_cycles(sys, budget)?;
    let mut used1 = BTreeSet::new();
    let mut used2 = BTreeSet::new();
    let mut core = HashMap::new();
    for p in &matching.pairs {
        let a = cores
            .sigma1
            .get(p.sigma1_cycle)
            .ok_or_else(|| ExtError::InvalidMatching(format!("no σ₁-cycle {}", p.sigma1_cycle)))?;
        let b = cores
            .sigma2
            .get(p.sigma2_cycle)
            .ok_or_else(|| ExtError::InvalidMatching(format!("no σ₂-cycle {}", p.sigma2_cycle)))?;
        if a.len() != b.len() {
            return Err(ExtError::InvalidMatching(format!("cycle lengths {} and {} differ", a.len(), b.len())));
        }
        if !used1.insert(p.sigma1_cycle) || !used2.insert(p.sigma2_cycle) {
            return Err(ExtError::InvalidMatching("a cycle is matched twice".into()));
        }
        let l = a.len();
        for (j, x) in a.iter().enumerate() {
            core.insert(x.clone(), b[(j + p.shift) % l].clone());
        }
    }
    if used1.len() != cores.sigma1.len() || used2.len() != cores.sigma2.len() {
        return Err(ExtError::InvalidMatching("every core cycle must be matched".into()));
    }
    let core_inv = core.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    let lazy = LazyTau { sigma1: sys.sigma1.clone(), sigma2: sys.sigma2.clone(), core, core_inv };
    let tau = match closed_form(sys, &lazy) {
        Some(f) => Tau::Rule(f),
        None => Tau::Lazy(lazy),
    };
    Ok(Q2System { sigma1: sys.sigma1.clone(), sigma2: sys.sigma2.clone(), tau })
}

const FIT_WINDOW: i64 = 256;
const FIT_MAX_EXCEPTIONS: usize = 32;

/// Guess affine rules per residue from far-out samples, collect the
/// disagreements as exceptions, and keep the guess only if it satisfies the
/// defining relations exactly and agrees with τ on the core — which pins it
/// down to this τ.
fn closed_form(sys: &BranchingSystem, lazy: &LazyTau) -> Option<RuleInjection> {
    let (s1, s2) = sys.rules()?;
    let domain = s1.domain();
    let lo = match domain {
        Domain::Integers => -FIT_WINDOW,
        d => i64::try_from(d.lower_bound()?).ok()?,
    };
    let hi = FIT_WINDOW;
    let samples: BTreeMap<i64, BigInt> = (lo..=hi)
        .map(|n| lazy.apply(&Index::Int(BigInt::from(n))).and_then(|v| v.as_int().cloned()).map(|v| (n, v)))
        .collect::<Option<_>>()?;
    'moduli: for m in [1i64, 2, 4, 8, 16] {
        let mut rules = Vec::new();
        for r in 0..m {
            let n2 = hi - (hi - r).rem_euclid(m);
            let n1 = n2 - m;
            let d = &samples[&n2] - &samples[&n1];
            if !d.is_multiple_of(&BigInt::from(m)) {
                continue 'moduli;
            }
            let slope = d / m;
            if slope.is_zero() {
                continue 'moduli;
            }
            let offset = &samples[&n1] - &slope * n1;
            rules.push((r as u64, Affine { slope, offset }));
        }
        let mut exceptions = BTreeMap::new();
        for (n, v) in &samples {
            let a = &rules[n.rem_euclid(m) as usize].1;
            let nb = BigInt::from(*n);
            if a.eval(&nb) != *v {
                exceptions.insert(nb, v.clone());
                if exceptions.len() > FIT_MAX_EXCEPTIONS {
                    continue 'moduli;
                }
            }
        }
        let Ok(f) = RuleInjection::new(domain, m as u64, rules, exceptions, BTreeSet::new()) else { continue };
        if certify(&f, s1, s2, lazy) {
            return Some(f.simplified());
        }
    }
    None
}

fn certify(f: &RuleInjection, s1: &RuleInjection, s2: &RuleInjection, lazy: &LazyTau) -> bool {
    let exact = || -> Option<bool> {
        if !f.validate().bijective {
            return Some(false);
        }
        if !f.compose(s2).ok()?.equals(s1).ok()? {
            return Some(false);
        }
        let lhs = s2.compose(f).ok()?;
        let rhs = f.compose(f).ok()?.compose(s2).ok()?;
        if !lhs.equals(&rhs).ok()? {
            return Some(false);
        }
        Some(lazy.core_points().all(|c| c.as_int().and_then(|x| f.try_apply(x)).map(Index::Int) == lazy.apply(c)))
    };
    exact().unwrap_or(false)
}
