use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use permrep_maps::{core_set, CoreKind, CoreSet, Domain, Injection, ProductCore, RuleInjection};
use serde::{Serialize, Serializer};

use crate::BranchError;

/// A cardinal in {0, 1, 2, …} ∪ {ω}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Omega,
}

impl Count {
    pub fn is_zero(&self) -> bool {
        *self == Count::Finite(0)
    }

    pub fn add(self, other: Count) -> Count {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Omega,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Omega => write!(f, "ω"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Omega => s.serialize_str("ω"),
        }
    }
}

/// Unitary-equivalence invariant of a permutative unitary: how many
/// cycles of each length, and how many infinite orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    pub finite_cycles: BTreeMap<usize, Count>,
    /// `None` when not determined
    pub infinite: Option<Count>,
    pub exact: bool,
}

impl OrbitStructure {
    pub fn empty() -> Self {
        OrbitStructure { finite_cycles: BTreeMap::new(), infinite: Some(Count::Finite(0)), exact: true }
    }

    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>, infinite: Count) -> Self {
        let mut finite_cycles = BTreeMap::new();
        for l in lengths {
            let c = finite_cycles.entry(l).or_insert(Count::Finite(0));
            *c = c.add(Count::Finite(1));
        }
        OrbitStructure { finite_cycles, infinite: Some(infinite), exact: true }
    }

    pub fn is_empty(&self) -> bool {
        self.finite_cycles.is_empty() && self.infinite == Some(Count::Finite(0))
    }

    /// Sorted list of cycle lengths with multiplicity; `None` if some
    /// length occurs infinitely often.
    pub fn cycle_lengths(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (l, c) in &self.finite_cycles {
            match c {
                Count::Finite(k) => out.extend(std::iter::repeat(*l).take(*k as usize)),
                Count::Omega => return None,
            }
        }
        Some(out)
    }

    /// Equality as invariants; `None` unless both are exact.
    pub fn equivalent(&self, other: &OrbitStructure) -> Option<bool> {
        (self.exact && other.exact).then(|| self == other)
    }
}

impl fmt::Display for OrbitStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.finite_cycles.iter().map(|(l, c)| format!("{c}×C{l}")).collect();
        let inf = self.infinite.map_or("?".to_string(), |c| c.to_string());
        write!(f, "[{}] + {} infinite", parts.join(", "), inf)?;
        if !self.exact {
            write!(f, " (sampled)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Purity {
    Pure,
    /// a core cycle (or, for product maps, a row/phase on an infinite
    /// backward chain)
    NotPure { witness: Vec<String> },
    Inconclusive(String),
}

impl Purity {
    pub fn is_pure(&self) -> Option<bool> {
        match self {
            Purity::Pure => Some(true),
            Purity::NotPure { .. } => Some(false),
            Purity::Inconclusive(_) => None,
        }
    }
}

pub fn core_of(sigma: &RuleInjection, budget: u64) -> CoreSet {
    core_set(sigma, budget)
}

/// Pure iff the Wold core is empty.
pub fn is_pure(sigma: &Injection, budget: u64) -> Purity {
    match sigma {
        Injection::Rule(f) => {
            let c = core_set(f, budget);
            if c.kind == CoreKind::WholeDomain {
                Purity::NotPure { witness: vec!["whole domain".into()] }
            } else if let Some(cy) = c.cycles.first() {
                Purity::NotPure { witness: cy.iter().map(|x| x.to_string()).collect() }
            } else if c.complete {
                Purity::Pure
            } else {
                Purity::Inconclusive(format!("no core point with |x| ≤ {}, search incomplete", c.bound))
            }
        }
        Injection::Product(f) => match f.core_certificate() {
            ProductCore::Empty => Purity::Pure,
            ProductCore::NonEmpty { row, phase } => Purity::NotPure { witness: vec![format!("row {row}, phase {phase}")] },
            ProductCore::Undecided(why) => Purity::Inconclusive(why),
        },
    }
}

/// Orbit structure of σ on its Wold core.
pub fn orbit_structure(sigma: &RuleInjection, core: &CoreSet) -> Result<OrbitStructure, BranchError> {
    if !core.complete {
        return Err(BranchError::IncompleteCore(core.bound.to_string()));
    }
    match core.kind {
        CoreKind::Finite => Ok(OrbitStructure::from_lengths(core.cycles.iter().map(|c| c.len()), Count::Finite(0))),
        CoreKind::WholeDomain => Ok(bijection_orbit_structure(sigma, 1 << 12)),
    }
}

/// Orbit structure of a bijection. Exact on ℤ for unit slopes without
/// exceptions (a residue cycle whose composite is x ↦ x + B carries |B|/M
/// infinite orbits, B = 0 gives infinitely many cycles); otherwise sampled
/// on |x| ≤ window.
pub fn bijection_orbit_structure(f: &RuleInjection, window: u64) -> OrbitStructure {
    if f.domain() == Domain::Integers && f.exceptions().is_empty() && f.removed().is_empty() && f.all_slopes_unit() {
        if let Some(s) = rule_level_structure(f) {
            return s;
        }
    }
    sampled_structure(f, window)
}

fn rule_level_structure(f: &RuleInjection) -> Option<OrbitStructure> {
    let m = f.modulus();
    let mb = BigInt::from(m);
    let mut seen = vec![false; m as usize];
    let mut finite: BTreeMap<usize, Count> = BTreeMap::new();
    let mut infinite = Count::Finite(0);
    for r0 in 0..m {
        if seen[r0 as usize] {
            continue;
        }
        // residue cycle and composite affine map over one turn
        let (mut slope, mut offset) = (BigInt::from(1), BigInt::zero());
        let mut r = r0;
        let mut len = 0usize;
        loop {
            if seen[r as usize] {
                if r != r0 {
                    return None;
                }
                break;
            }
            seen[r as usize] = true;
            let a = f.rule(r)?;
            slope = &a.slope * &slope;
            offset = &a.slope * &offset + &a.offset;
            len += 1;
            r = a.eval(&BigInt::from(r)).mod_floor(&mb).to_u64()?;
        }
        let bump = |map: &mut BTreeMap<usize, Count>, l: usize, c: Count| {
            let e = map.entry(l).or_insert(Count::Finite(0));
            *e = e.add(c);
        };
        if slope == BigInt::from(1) {
            if offset.is_zero() {
                bump(&mut finite, len, Count::Omega);
            } else {
                infinite = infinite.add(Count::Finite((offset.abs() / &mb).to_u64()?));
            }
        } else {
            // x ↦ B − x over one turn: pairs, plus possibly one fixed point
            bump(&mut finite, 2 * len, Count::Omega);
            if offset.is_even() {
                let x: BigInt = &offset / 2;
                if x.mod_floor(&mb) == BigInt::from(r0) {
                    bump(&mut finite, len, Count::Finite(1));
                }
            }
        }
    }
    Some(OrbitStructure { finite_cycles: finite, infinite: Some(infinite), exact: true })
}

fn sampled_structure(f: &RuleInjection, window: u64) -> OrbitStructure {
    let w = BigInt::from(window);
    let lo = f.domain().lower_bound().unwrap_or_else(|| -w.clone());
    let mut done: BTreeSet<BigInt> = BTreeSet::new();
    let mut lengths = Vec::new();
    let mut x0 = lo;
    while x0 <= w {
        if !done.contains(&x0) {
            let mut x = x0.clone();
            let mut path = vec![x.clone()];
            let mut closed = false;
            for _ in 0..4 * window {
                match f.try_apply(&x) {
                    Some(y) if y == x0 => {
                        closed = true;
                        break;
                    }
                    Some(y) => {
                        path.push(y.clone());
                        x = y;
                    }
                    None => break,
                }
            }
            if closed {
                lengths.push(path.len());
                done.extend(path);
            } else {
                done.insert(x0.clone());
            }
        }
        x0 += 1;
    }
    let mut s = OrbitStructure::from_lengths(lengths, Count::Finite(0));
    s.infinite = None;
    s.exact = false;
    s
}

/// Eigenvalue groups: (n, m) means every n-th root of unity occurs with
/// multiplicity m.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub groups: Vec<(usize, Count)>,
    pub pure: bool,
    /// set when only part of the spectrum could be established
    pub caveat: Option<String>,
}

impl SpectrumReport {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Multiplicity of the eigenvalue e^{2πi p/q} in lowest terms.
    pub fn multiplicity(&self, q: usize) -> Count {
        self.groups
            .iter()
            .filter(|(n, _)| n % q == 0)
            .fold(Count::Finite(0), |acc, (_, m)| acc.add(*m))
    }
}

/// Point spectrum of the isometry S_σ: only finite orbits contribute.
pub fn point_spectrum(sigma: &Injection, budget: u64) -> Result<SpectrumReport, BranchError> {
    match sigma {
        Injection::Product(_) => match is_pure(sigma, budget) {
            Purity::Pure => Ok(SpectrumReport { groups: vec![], pure: true, caveat: None }),
            p => Err(BranchError::Inconclusive(format!("product map core: {p:?}"))),
        },
        Injection::Rule(f) => {
            let core = core_set(f, budget);
            if !core.complete {
                return Err(BranchError::IncompleteCore(core.bound.to_string()));
            }
            let s = orbit_structure(f, &core)?;
            let caveat = match (core.kind, s.infinite) {
                (CoreKind::WholeDomain, Some(c)) if !c.is_zero() => Some("infinite orbits carry no eigenvectors".into()),
                (_, None) => Some("orbit structure sampled; spectrum may be incomplete".into()),
                _ => None,
            };
            Ok(SpectrumReport {
                groups: s.finite_cycles.into_iter().collect(),
                pure: core.kind == CoreKind::Finite && core.cycles.is_empty(),
                caveat,
            })
        }
    }
}

/// Cycle lengths of a finite permutation, sorted; its characteristic
/// polynomial is Π (λ^{nᵢ} − 1).
pub fn char_poly_factors(perm: &BTreeMap<BigInt, BigInt>) -> Result<Vec<usize>, BranchError> {
    let values: BTreeSet<&BigInt> = perm.values().collect();
    if values.len() != perm.len() || perm.values().any(|v| !perm.contains_key(v)) {
        return Err(BranchError::Invalid("not a permutation of a finite set".into()));
    }
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for start in perm.keys() {
        if done.contains(start) {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        loop {
            done.insert(x.clone());
            len += 1;
            x = &perm[x];
            if x == start {
                break;
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    Ok(out)
}

/// Render Π (λ^{nᵢ} − 1) with repeated factors collected.
pub fn char_poly_string(lengths: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in lengths {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(l, k)| {
            let base = if l == 1 { "(λ−1)".to_string() } else { format!("(λ^{l}−1)") };
            if k == 1 {
                base
            } else {
                format!("{base}^{k}")
            }
        })
        .collect()
}
