use permrep_extension::Q2System;
use permrep_maps::{Domain, RuleInjection};
use serde::Serialize;

use crate::EndoError;

/// χ_{2k+1}: S₂ fixed, U ↦ U^{2k+1}, in the canonical representation.
pub fn chi_rep(k: i64) -> Result<Q2System, EndoError> {
    chi_shift(2 * k + 1)
}

/// Same with the shift given directly; even shifts are rejected.
pub fn chi_shift(m: i64) -> Result<Q2System, EndoError> {
    if m % 2 == 0 {
        return Err(EndoError::EvenShift(m));
    }
    Ok(Q2System::from_rules(RuleInjection::affine(Domain::Integers, 2, 0), RuleInjection::affine(Domain::Integers, 1, m))?)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub ok: bool,
    pub checked: u64,
    /// (k, i): V S_i e_k differs from λ_f(S_i) V e_k
    pub witness: Option<(i64, u8)>,
}

/// Checks V σᵢ(k) = σ_{3−i}(V k) on the negative (or non-negative, when
/// `from_negative` is false) half of the window, for the canonical
/// σ₁ = 2k+1, σ₂ = 2k. V must also map that half into the other one
/// injectively.
pub fn intertwiner_check(v: impl Fn(i64) -> i64, window: u64, from_negative: bool) -> IntertwinerReport {
    let sigma = |i: u8, k: i64| if i == 1 { 2 * k + 1 } else { 2 * k };
    let half = (window / 2).max(1) as i64;
    let ks: Vec<i64> = if from_negative { (-half..0).collect() } else { (0..half).collect() };
    let mut seen = std::collections::HashSet::new();
    for &k in &ks {
        let vk = v(k);
        if (vk < 0) == from_negative || !seen.insert(vk) {
            return IntertwinerReport { ok: false, checked: ks.len() as u64, witness: Some((k, 0)) };
        }
        for i in [1u8, 2] {
            if v(sigma(i, k)) != sigma(3 - i, vk) {
                return IntertwinerReport { ok: false, checked: ks.len() as u64, witness: Some((k, i)) };
            }
        }
    }
    IntertwinerReport { ok: true, checked: ks.len() as u64, witness: None }
}

/// V e_k = e_{−k−1} intertwines the negative half of the canonical system
/// with the non-negative half composed with the flip-flop.
pub fn flipflop_intertwiner_check(window: u64) -> IntertwinerReport {
    intertwiner_check(|k| -k - 1, window, true)
}
