use std::collections::{BTreeMap, BTreeSet};

use permrep_branching::BranchingSystem;
use permrep_classify::{kawamura_finite, kawamura_infinite, ones_plus_twos, MultiIndex};
use permrep_endo::{chi_rep, rep_of_endo};
use permrep_extension::{Q2System, Tau};
use permrep_maps::{big, Affine, Domain, Injection, RuleInjection};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// An O₂ system or a Q₂ system given by (σ₂, τ).
#[derive(Clone, Debug)]
pub enum System {
    O2(BranchingSystem),
    Q2(Q2System),
}

#[derive(Serialize, Deserialize)]
struct Q2Json {
    sigma2: RuleInjection,
    tau: RuleInjection,
}

impl System {
    pub fn branching(&self) -> BranchingSystem {
        match self {
            System::O2(s) => s.clone(),
            System::Q2(q) => q.branching(),
        }
    }

    /// `{"sigma1", "sigma2"}` or `{"sigma2", "tau"}`.
    pub fn to_json(&self) -> Result<Value, CliError> {
        let v = match self {
            System::O2(s) => serde_json::to_value(s),
            System::Q2(q) => {
                let (Injection::Rule(sigma2), Tau::Rule(tau)) = (&q.sigma2, &q.tau) else {
                    return Err(CliError::Schema("only rule-form Q₂ systems serialize".into()));
                };
                serde_json::to_value(Q2Json { sigma2: sigma2.clone(), tau: tau.clone() })
            }
        };
        v.map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        let bad = |e: serde_json::Error| CliError::Schema(e.to_string());
        if v.get("tau").is_some() {
            let q: Q2Json = serde_json::from_value(v.clone()).map_err(bad)?;
            Ok(System::Q2(Q2System::from_rules(q.sigma2, q.tau)?))
        } else {
            Ok(System::O2(serde_json::from_value(v.clone()).map_err(bad)?))
        }
    }
}

pub const CATALOG: [&str; 7] = ["canonical", "p12_realization1", "p12_realization2", "kawamura:I", "onekk:k", "chi:k", "endo:NAME"];

fn rules(domain: Domain, modulus: u64, rs: &[(u64, i64, i64)], exceptions: &[(i64, i64)]) -> Result<RuleInjection, CliError> {
    Ok(RuleInjection::new(
        domain,
        modulus,
        rs.iter().map(|&(r, a, b)| (r, Affine::new(a, b))).collect(),
        exceptions.iter().map(|&(k, v)| (big(k), big(v))).collect::<BTreeMap<_, _>>(),
        BTreeSet::new(),
    )?)
}

/// S₁ e_k = e_{2k+1}, S₂ e_k = e_{2k} on ℤ.
pub fn canonical() -> Result<BranchingSystem, CliError> {
    Ok(BranchingSystem::new(
        RuleInjection::affine(Domain::Integers, 2, 1),
        RuleInjection::affine(Domain::Integers, 2, 0),
    )?)
}

/// P(12) on ℕ₁: σ₁ = {1↦3, 2↦1, k↦2k−1 (k ≥ 3)}, σ₂ = 2k.
pub fn p12_realization1() -> Result<BranchingSystem, CliError> {
    let s1 = rules(Domain::NatFromOne, 1, &[(0, 2, -1)], &[(1, 3), (2, 1)])?;
    Ok(BranchingSystem::new(s1, RuleInjection::affine(Domain::NatFromOne, 2, 0))?)
}

/// P(12) on ℕ₁: σ₁ = {odd k ↦ 2k+1, even k ↦ 2k−3}, σ₂ = 2k.
pub fn p12_realization2() -> Result<BranchingSystem, CliError> {
    let s1 = rules(Domain::NatFromOne, 2, &[(1, 2, 1), (0, 2, -3)], &[])?;
    Ok(BranchingSystem::new(s1, RuleInjection::affine(Domain::NatFromOne, 2, 0))?)
}

pub fn catalog(name: &str) -> Result<System, CliError> {
    let name = name.trim();
    let unknown = || CliError::UnknownEntry(name.to_string());
    let arg = |p: &str| name.strip_prefix(p);
    if let Some(i) = arg("kawamura:") {
        let i = MultiIndex::parse(i)?;
        return Ok(System::O2(if i.is_finite() { kawamura_finite(&i)? } else { kawamura_infinite(&i)? }));
    }
    if let Some(k) = arg("onekk:") {
        return Ok(System::O2(ones_plus_twos(k.parse().map_err(|_| unknown())?)?));
    }
    if let Some(k) = arg("chi:") {
        return Ok(System::Q2(chi_rep(k.parse().map_err(|_| unknown())?)?));
    }
    if let Some(n) = arg("endo:") {
        return Ok(System::O2(rep_of_endo(n)?));
    }
    match name {
        "canonical" => Ok(System::O2(canonical()?)),
        "p12_realization1" => Ok(System::O2(p12_realization1()?)),
        "p12_realization2" => Ok(System::O2(p12_realization2()?)),
        _ => Err(unknown()),
    }
}
