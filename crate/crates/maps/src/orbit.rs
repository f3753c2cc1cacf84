use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Affine, RuleInjection};

/// Why a forward orbit never returns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceWitness {
    /// iterate from which growth is certified
    pub index: String,
    pub step: u64,
    /// residues visited by one turn of the residue dynamics
    pub residue_cycle: Vec<u64>,
    /// composite rule over one turn: x ↦ slope·x + offset
    pub cycle_slope: String,
    pub cycle_offset: String,
    pub threshold: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitDescriptor {
    FiniteCycle { members: Vec<String> },
    CertifiedInfinite(DivergenceWitness),
    /// the map is undefined at this iterate (partial maps only)
    Terminated { at: String },
    Inconclusive { steps: u64 },
}

struct ResidueCycle {
    residues: Vec<u64>,
    // partial composites of the first i rules, i = 0..len
    partials: Vec<Affine>,
    full: Affine,
}

fn residue_cycle(f: &RuleInjection, r0: u64) -> Option<ResidueCycle> {
    let m = f.modulus();
    let mb = BigInt::from(m);
    let next = |r: u64| -> Option<u64> {
        let a = f.rule(r)?;
        Some(a.eval(&BigInt::from(r)).mod_floor(&mb).to_u64().unwrap())
    };
    let mut residues = vec![r0];
    let mut r = next(r0)?;
    while r != r0 {
        if residues.len() as u64 > m {
            return None;
        }
        residues.push(r);
        r = next(r)?;
    }
    let mut acc = Affine::new(1, 0);
    let mut partials = Vec::new();
    for &r in &residues {
        partials.push(acc.clone());
        acc = acc.then(f.rule(r).unwrap());
    }
    Some(ResidueCycle { residues, partials, full: acc })
}

/// Growth threshold for a residue cycle, `None` if the cycle does not
/// certify divergence from `x`.
fn certifies(c: &ResidueCycle, zone: &BigInt, x: &BigInt) -> Option<BigInt> {
    let mut t = zone.clone();
    for p in &c.partials {
        let need = (zone + p.offset.abs()).div_ceil(&p.slope.abs());
        t = t.max(need);
    }
    if x.abs() <= t {
        return None;
    }
    let a = &c.full.slope;
    let b = &c.full.offset;
    let grows = if a.abs() >= BigInt::from(2) {
        x.abs() > b.abs()
    } else if a.is_one() {
        !b.is_zero() && x.signum() == b.signum()
    } else {
        false
    };
    grows.then_some(t)
}

/// Forward orbit of `n`: exact cycle detection, divergence certificates for
/// expansive or translating residue regimes, otherwise Inconclusive.
pub fn orbit_of(f: &RuleInjection, n: &BigInt, budget: u64) -> OrbitDescriptor {
    let zone = f.exception_zone();
    let mut cycles: HashMap<u64, Option<ResidueCycle>> = HashMap::new();
    let mut seen = HashSet::new();
    let mut path = vec![n.clone()];
    let mut x = n.clone();
    seen.insert(x.clone());
    for step in 0..budget {
        let r = f.residue_of(&x);
        if x.abs() > zone {
            let c = cycles.entry(r).or_insert_with(|| residue_cycle(f, r));
            if let Some(c) = c {
                if let Some(t) = certifies(c, &zone, &x) {
                    return OrbitDescriptor::CertifiedInfinite(DivergenceWitness {
                        index: x.to_string(),
                        step,
                        residue_cycle: c.residues.clone(),
                        cycle_slope: c.full.slope.to_string(),
                        cycle_offset: c.full.offset.to_string(),
                        threshold: t.to_string(),
                    });
                }
            }
        }
        let Some(y) = f.try_apply(&x) else {
            return OrbitDescriptor::Terminated { at: x.to_string() };
        };
        if y == *n {
            return OrbitDescriptor::FiniteCycle { members: path.iter().map(|v| v.to_string()).collect() };
        }
        if !seen.insert(y.clone()) {
            // cannot happen for injective maps
            return OrbitDescriptor::Inconclusive { steps: step + 1 };
        }
        path.push(y.clone());
        x = y;
    }
    OrbitDescriptor::Inconclusive { steps: budget }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoreKind {
    /// finitely many points, all on finite cycles
    Finite,
    /// the map is a bijection, so every point is in the core
    WholeDomain,
}

/// ⋂ σⁿ(domain) as found by search.
#[derive(Clone, Debug, Serialize)]
pub struct CoreSet {
    pub kind: CoreKind,
    /// cycles, each listed from its minimal member
    pub cycles: Vec<Vec<BigInt>>,
    /// no core point outside the searched region (expansivity argument)
    pub complete: bool,
    /// searched region |x| ≤ bound
    pub bound: BigInt,
}

impl CoreSet {
    pub fn members(&self) -> BTreeSet<BigInt> {
        self.cycles.iter().flatten().cloned().collect()
    }

    pub fn is_certified_empty(&self) -> bool {
        self.complete && self.kind == CoreKind::Finite && self.cycles.is_empty()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        v.sort_unstable();
        v
    }
}

/// Bound outside which an expansive map strictly increases |x|.
pub fn expansive_bound(f: &RuleInjection) -> BigInt {
    let mut t = f.exception_zone();
    for (_, a) in f.rule_list() {
        let d = a.slope.abs() - BigInt::one();
        if d.is_positive() {
            t = t.max(a.offset.abs().div_ceil(&d));
        }
    }
    t
}

/// Cycles of `f` inside the region |x| ≤ bound (intersected with the domain).
pub(crate) fn cycles_within(f: &RuleInjection, bound: &BigInt) -> Vec<Vec<BigInt>> {
    let lo = f.domain().lower_bound().unwrap_or_else(|| -bound.clone()).max(-bound.clone());
    let mut done: HashSet<BigInt> = HashSet::new();
    let mut cycles = Vec::new();
    let mut x0 = lo;
    while x0 <= *bound {
        if !done.contains(&x0) {
            let mut path: Vec<BigInt> = Vec::new();
            let mut pos: HashMap<BigInt, usize> = HashMap::new();
            let mut x = x0.clone();
            loop {
                if done.contains(&x) || x.abs() > *bound {
                    break;
                }
                if let Some(&i) = pos.get(&x) {
                    let mut c: Vec<BigInt> = path[i..].to_vec();
                    let k = c.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap().0;
                    c.rotate_left(k);
                    cycles.push(c);
                    break;
                }
                pos.insert(x.clone(), path.len());
                path.push(x.clone());
                match f.try_apply(&x) {
                    Some(y) => x = y,
                    None => break,
                }
            }
            done.extend(path);
        }
        x0 += 1;
    }
    cycles.sort_by(|a, b| (a.len(), &a[0]).cmp(&(b.len(), &b[0])));
    cycles
}

/// Wold core of `sigma`. Complete when every rule is expansive: then all
/// periodic points lie in a computable bounded region and every backward
/// chain from outside it shrinks into it.
pub fn core_set(sigma: &RuleInjection, budget: u64) -> CoreSet {
    if sigma.all_slopes_expansive() {
        let bound = expansive_bound(sigma);
        if bound <= BigInt::from(budget) {
            return CoreSet { kind: CoreKind::Finite, cycles: cycles_within(sigma, &bound), complete: true, bound };
        }
        let b = BigInt::from(budget);
        return CoreSet { kind: CoreKind::Finite, cycles: cycles_within(sigma, &b), complete: false, bound: b };
    }
    let v = sigma.validate();
    if v.bijective {
        return CoreSet { kind: CoreKind::WholeDomain, cycles: Vec::new(), complete: true, bound: BigInt::zero() };
    }
    let b = BigInt::from(budget.min(1 << 12));
    CoreSet { kind: CoreKind::Finite, cycles: cycles_within(sigma, &b), complete: false, bound: b }
}
