use std::collections::{BTreeMap, HashMap};

use permrep_branching::{bijection_orbit_structure, shift_cycles, validate_branching, BranchingSystem, Count, OrbitStructure, WordCycle};
use permrep_maps::{Domain, Index, Injection, RuleInjection};
use serde::{Deserialize, Serialize};

use crate::fast::{self, Witnesses};
use crate::{ExtError, LazyTau, Tau};

/// A permutative Q₂ representation: σ₂, the unitary's index map τ, and
/// σ₁ = τ∘σ₂.
#[derive(Clone, Debug, Serialize)]
pub struct Q2System {
    pub sigma1: Injection,
    pub sigma2: Injection,
    pub tau: Tau,
}

#[derive(Deserialize)]
struct Q2Input {
    sigma2: RuleInjection,
    tau: RuleInjection,
}

impl Q2System {
    /// σ₁ is derived as τ∘σ₂.
    pub fn from_rules(sigma2: RuleInjection, tau: RuleInjection) -> Result<Self, ExtError> {
        if sigma2.domain() != tau.domain() {
            return Err(ExtError::Invalid("σ₂ and τ act on different domains".into()));
        }
        let sigma1 = tau.compose(&sigma2)?;
        Ok(Q2System { sigma1: sigma1.into(), sigma2: sigma2.into(), tau: Tau::Rule(tau) })
    }

    /// `{"sigma2": …, "tau": …}` with rule maps.
    pub fn from_json(s: &str) -> Result<Self, ExtError> {
        let q: Q2Input = serde_json::from_str(s).map_err(|e| ExtError::Invalid(e.to_string()))?;
        Q2System::from_rules(q.sigma2, q.tau)
    }

    pub fn domain(&self) -> Domain {
        self.sigma2.domain()
    }

    pub fn branching(&self) -> BranchingSystem {
        BranchingSystem { sigma1: self.sigma1.clone(), sigma2: self.sigma2.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Exact,
    WindowChecked { window: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub ok: bool,
    pub method: Method,
    pub witness: Option<String>,
}

impl Check {
    fn exact(ok: bool, witness: Option<String>) -> Self {
        Check { ok, method: Method::Exact, witness: if ok { None } else { witness } }
    }

    fn windowed(window: u64, witness: Option<String>) -> Self {
        Check { ok: witness.is_none(), method: Method::WindowChecked { window }, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Q2Report {
    /// τ is a bijection of the index set
    pub bijective: Check,
    /// σ₂∘τ = τ∘τ∘σ₂
    pub relation: Check,
    /// τ∘σ₂ = σ₁
    pub derived_sigma1: Check,
    /// (σ₁, σ₂) is a branching system
    pub branching: Check,
    /// τ has no periodic points (checked up to a bounded period when windowed)
    pub no_periodic_points: Check,
    pub passed: bool,
}

/// Memoized τ for window checks: τ(n) = σ₁(m) if n = σ₂(m), else σ₂(τ(σ₁⁻¹ n)).
struct Memo<'a> {
    tau: &'a LazyTau,
    seen: HashMap<Index, Option<Index>>,
}

impl Memo<'_> {
    fn apply(&mut self, n: &Index) -> Option<Index> {
        if let Some(v) = self.seen.get(n) {
            return v.clone();
        }
        let mut chain = Vec::new();
        let mut x = n.clone();
        let mut value = loop {
            if let Some(v) = self.seen.get(&x) {
                break v.clone();
            }
            if let Some(v) = self.tau.core_value(&x) {
                break Some(v);
            }
            if let Some(m) = self.tau.sigma2.preimage(&x) {
                break self.tau.sigma1.try_apply(&m);
            }
            match self.tau.sigma1.preimage(&x) {
                Some(p) => {
                    chain.push(std::mem::replace(&mut x, p));
                }
                None => break None,
            }
            if chain.len() > 100_000 {
                break None;
            }
        };
        self.seen.insert(x, value.clone());
        while let Some(y) = chain.pop() {
            value = value.and_then(|v| self.tau.sigma2.try_apply(&v));
            self.seen.insert(y, value.clone());
        }
        value
    }
}

enum Eval<'a> {
    Rule(&'a RuleInjection),
    Lazy(Memo<'a>),
}

impl Eval<'_> {
    fn apply(&mut self, n: &Index) -> Option<Index> {
        match self {
            Eval::Rule(f) => n.as_int().and_then(|x| f.try_apply(x)).map(Index::Int),
            Eval::Lazy(m) => m.apply(n),
        }
    }
}

/// Sample indices: the first `window` of a one-sided domain, a centred
/// window on ℤ, a block of columns × rows on ℤ × ℕ₁.
pub fn window_points(domain: Domain, window: u64) -> Vec<Index> {
    let w = window as i64;
    match domain {
        Domain::Integers => (-(w / 2)..w - w / 2).map(Index::int).collect(),
        Domain::ProductZxN => {
            let rows = (w / 17).max(1);
            (-8..=8).flat_map(|c| (1..=rows).map(move |r| Index::pair(c, r))).collect()
        }
        d => {
            let lo = i64::try_from(d.lower_bound().unwrap_or_default()).unwrap_or(0);
            (lo..lo + w).map(Index::int).collect()
        }
    }
}

/// Checks the Q₂ relations. Closed-form τ is decided exactly; lazy τ is
/// checked on a window, with periods up to `max_period`.
pub fn verify_q2(q: &Q2System, window: u64, max_period: usize) -> Q2Report {
    let sys = q.branching();
    let br = validate_branching(&sys);
    let pts = window_points(q.domain(), window);
    let report = match (&q.tau, &q.sigma1, &q.sigma2) {
        (Tau::Rule(f), Injection::Rule(s1), Injection::Rule(s2)) => {
            let v = f.validate();
            let bij_w = v.undefined_at.clone().or_else(|| v.range.collisions.first().map(|c| c.witness.clone())).or(v.range.uncovered.clone());
            let bijective = Check::exact(v.bijective, bij_w);
            let relation = match (s2.compose(f), f.compose(f).and_then(|ff| ff.compose(s2))) {
                (Ok(l), Ok(r)) => match l.first_difference(&r) {
                    Ok(d) => Check::exact(d.is_none(), d.map(|x| x.to_string())),
                    Err(e) => Check::exact(false, Some(e.to_string())),
                },
                (Err(e), _) | (_, Err(e)) => Check::exact(false, Some(e.to_string())),
            };
            let derived_sigma1 = match f.compose(s2).and_then(|c| c.first_difference(s1)) {
                Ok(d) => Check::exact(d.is_none(), d.map(|x| x.to_string())),
                Err(e) => Check::exact(false, Some(e.to_string())),
            };
            let branching = Check::exact(br.valid, br.witness());
            let structure = bijection_orbit_structure(f, window);
            let no_periodic_points = if structure.exact {
                let w = structure.finite_cycles.iter().find(|(_, c)| !c.is_zero()).map(|(l, _)| format!("{l}-cycle"));
                Check::exact(w.is_none(), w)
            } else {
                periodic_check(&mut Eval::Rule(f), &pts, window, max_period)
            };
            Q2Report { bijective, relation, derived_sigma1, branching, no_periodic_points, passed: false }
        }
        (Tau::Lazy(t), _, _) => lazy_report(q, t, &pts, window, max_period, br.valid, br.witness()),
        (Tau::Rule(_), _, _) => {
            let bad = Check::exact(false, Some("closed-form τ on a product domain".into()));
            Q2Report {
                bijective: bad.clone(),
                relation: bad.clone(),
                derived_sigma1: bad.clone(),
                branching: bad.clone(),
                no_periodic_points: bad,
                passed: false,
            }
        }
    };
    let passed = [&report.bijective, &report.relation, &report.derived_sigma1, &report.branching, &report.no_periodic_points]
        .iter()
        .all(|c| c.ok);
    Q2Report { passed, ..report }
}

fn lazy_report(
    q: &Q2System,
    t: &LazyTau,
    pts: &[Index],
    window: u64,
    max_period: usize,
    valid: bool,
    witness: Option<String>,
) -> Q2Report {
    let w = fast::check(t, pts, max_period).unwrap_or_else(|| generic_witnesses(q, t, pts, window, max_period));
    Q2Report {
        bijective: Check::windowed(window, w.bijective),
        relation: Check::windowed(window, w.relation),
        derived_sigma1: Check::windowed(window, w.derived),
        branching: Check { ok: valid, method: Method::Exact, witness },
        no_periodic_points: Check::windowed(window, w.periodic),
        passed: false,
    }
}

fn generic_witnesses(q: &Q2System, t: &LazyTau, pts: &[Index], window: u64, max_period: usize) -> Witnesses {
    let mut ev = Eval::Lazy(Memo { tau: t, seen: HashMap::new() });
    let mut w = Witnesses::default();
    for n in pts {
        let tn = ev.apply(n);
        if w.bijective.is_none() {
            let back = tn.as_ref().and_then(|v| t.preimage(v));
            let fwd = t.preimage(n).and_then(|p| ev.apply(&p));
            if back.as_ref() != Some(n) || fwd.as_ref() != Some(n) {
                w.bijective = Some(n.to_string());
            }
        }
        let t_s2n = q.sigma2.try_apply(n).and_then(|v| ev.apply(&v));
        if w.relation.is_none() {
            let lhs = tn.as_ref().and_then(|v| q.sigma2.try_apply(v));
            let rhs = t_s2n.as_ref().and_then(|v| ev.apply(v));
            if lhs.is_none() || lhs != rhs {
                w.relation = Some(n.to_string());
            }
        }
        if w.derived.is_none() && (t_s2n.is_none() || t_s2n != q.sigma1.try_apply(n)) {
            w.derived = Some(n.to_string());
        }
    }
    w.periodic = periodic_check(&mut ev, pts, window, max_period).witness;
    w
}

fn periodic_check(ev: &mut Eval<'_>, pts: &[Index], window: u64, max_period: usize) -> Check {
    for n in pts {
        let mut x = n.clone();
        for j in 1..=max_period {
            match ev.apply(&x) {
                Some(y) => x = y,
                None => return Check::windowed(window, Some(format!("τ undefined along the orbit of {n}"))),
            }
            if x == *n {
                return Check::windowed(window, Some(format!("{n} has period {j}")));
            }
        }
    }
    Check::windowed(window, None)
}

/// Number of τ-orbits given the cycles of the shift: each orbit meets
/// exactly one point whose coding is purely periodic and not 1^∞.
pub fn coding_orbit_count(cycles: &[WordCycle]) -> u64 {
    cycles.iter().filter(|c| c.word.iter().any(|&d| d != 1)).map(|c| c.word.len() as u64).sum()
}

/// Orbit structure of τ: decided at rule level when possible, otherwise
/// counted through the shift cycles (τ has no finite orbits).
pub fn tau_orbit_structure(q: &Q2System, window: u64, budget: u64) -> Result<OrbitStructure, ExtError> {
    if let Tau::Rule(f) = &q.tau {
        let s = bijection_orbit_structure(f, window);
        if s.exact {
            return Ok(s);
        }
    }
    let cycles = shift_cycles(&q.branching(), budget)?;
    Ok(OrbitStructure {
        finite_cycles: BTreeMap::new(),
        infinite: Some(Count::Finite(coding_orbit_count(&cycles.cycles))),
        exact: true,
    })
}

/// Permutative unitaries are unitarily equivalent iff their index maps have
/// the same orbit structure.
pub fn unitary_equiv_tau(a: &Q2System, b: &Q2System, window: u64, budget: u64) -> Result<bool, ExtError> {
    let (sa, sb) = (tau_orbit_structure(a, window, budget)?, tau_orbit_structure(b, window, budget)?);
    sa.equivalent(&sb).ok_or_else(|| ExtError::Inconclusive(format!("orbit structures {sa} and {sb} not decided")))
}
