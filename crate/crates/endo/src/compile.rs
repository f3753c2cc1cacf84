use std::collections::{BTreeMap, BTreeSet};

use permrep_maps::{Affine, Domain, RuleInjection};

use crate::{EndoError, MonomialExpr, Term};

/// Longest S_β* word accepted (the modulus is 2^|β|).
const MAX_BETA: usize = 16;

/// t(w) with S_w e_k = e_{2^|w| k + t(w)}: fold from the rightmost letter,
/// S₂: k ↦ 2k, S₁: k ↦ 2k+1.
pub fn word_offset(w: &[u8]) -> i64 {
    w.iter().rev().fold(0, |x, &d| 2 * x + i64::from(d == 1))
}

/// The branch of one term: l ≡ t(β) (mod 2^|β|) goes to
/// 2^{|α|−|β|}(l − t(β)) + 2^{|α|}h + t(α).
pub fn term_branch(t: &Term) -> Result<(u64, u64, Affine), EndoError> {
    if t.alpha.len() < t.beta.len() {
        return Err(EndoError::NotPermutative(format!("{t} contracts indices")));
    }
    if t.beta.len() > MAX_BETA || t.alpha.len() > 62 {
        return Err(EndoError::NotPermutative(format!("{t} is too long")));
    }
    let slope = 1i64 << (t.alpha.len() - t.beta.len());
    let tb = word_offset(&t.beta);
    let offset = (1i64 << t.alpha.len()) * t.upower + word_offset(&t.alpha) - slope * tb;
    Ok((1u64 << t.beta.len(), tb as u64, Affine::new(slope, offset)))
}

/// Basis action of the expression in the canonical representation
/// (U e_k = e_{k+1}, S₂ e_k = e_{2k}). Each basis vector must be moved by
/// exactly one term and the result must be injective.
pub fn compile(expr: &MonomialExpr) -> Result<RuleInjection, EndoError> {
    let branches = expr.terms.iter().map(term_branch).collect::<Result<Vec<_>, _>>()?;
    let modulus = branches.iter().map(|b| b.0).max().unwrap_or(1);
    let mut rules: BTreeMap<u64, Affine> = BTreeMap::new();
    for (m, r, a) in &branches {
        for residue in (*r..modulus).step_by(*m as usize) {
            if rules.insert(residue, a.clone()).is_some() {
                return Err(EndoError::Overlap { residue, modulus });
            }
        }
    }
    if let Some(residue) = (0..modulus).find(|r| !rules.contains_key(r)) {
        return Err(EndoError::Uncovered { residue, modulus });
    }
    let f = RuleInjection::new(Domain::Integers, modulus, rules.into_iter().collect(), BTreeMap::new(), BTreeSet::new())?
        .simplified();
    let report = f.validate();
    if !report.injective {
        return Err(EndoError::NotPermutative(format!("{expr} is not injective")));
    }
    Ok(f)
}
