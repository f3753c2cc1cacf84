use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use permrep_branching::BranchingSystem;
use permrep_maps::Index;
use serde::{Serialize, Serializer};

use crate::phase::{order_form, ser_complex};
use crate::{Phase, StateError};

/// Default bound on h and k for the order hypothesis.
pub const ORDER_BOUND: u32 = 64;

/// coefficient · phase.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateValue {
    #[serde(serialize_with = "ser_ratio")]
    pub coeff: BigRational,
    pub phase: Phase,
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl StateValue {
    pub fn is_exact(&self) -> bool {
        self.phase.exact.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn value(&self) -> Complex64 {
        let c = num_traits::ToPrimitive::to_f64(&self.coeff).unwrap_or(0.0);
        self.phase.numeric * c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderViolation {
    pub order: u64,
    pub h: u32,
    pub k: u32,
}

/// Raised iff z is exact of order (2^h−1)2^k, h, k ≤ bound; other phases
/// pass.
pub fn order_hypothesis(z: &Phase, bound: u32) -> Option<OrderViolation> {
    let order = z.order()?;
    order_form(order, bound).map(|(h, k)| OrderViolation { order, h, k })
}

/// Ω_z(S_α S_β* U^h) = δ_{|α|,|β|} 2^{−|α|} z^h.
pub fn omega_z(alpha: &[u8], beta: &[u8], h: i64, z: &Phase, override_hypothesis: bool) -> Result<StateValue, StateError> {
    if !override_hypothesis {
        if let Some(v) = order_hypothesis(z, ORDER_BOUND) {
            return Err(StateError::OrderHypothesis { order: v.order, h: v.h, k: v.k });
        }
    }
    let coeff = if alpha.len() == beta.len() {
        BigRational::new(BigInt::one(), BigInt::one() << alpha.len())
    } else {
        BigRational::zero()
    };
    Ok(StateValue { coeff, phase: z.pow(h) })
}

/// (1 − z^{2^k(2^h−1)}) / (1 − z^{2^h−1}), read as Σ_{j<2^k} w^j with
/// w = z^{2^h−1}.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricFactor {
    pub h: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub vanishes: bool,
}

fn pow2_mod(e: u32, q: u64) -> u128 {
    let mut x: u128 = 1 % q as u128;
    for _ in 0..e {
        x = x * 2 % q as u128;
    }
    x
}

/// Exact for rational z: w has order q/gcd(q, 2^h−1), and the sum vanishes
/// iff that order is a power of two in (1, 2^k].
pub fn geometric_factor(z: &Phase, h: u32, k: u32) -> GeometricFactor {
    match z.exact {
        Some((p, q)) => {
            let e = (pow2_mod(h, q) + q as u128 - 1) % q as u128;
            let w = Phase::rational((p as u128 * e % q as u128) as i64, q).expect("q > 0");
            let (pw, qw) = w.exact.expect("exact");
            let vanishes = qw > 1 && qw.is_power_of_two() && qw.trailing_zeros() <= k;
            let value = if qw == 1 {
                Complex64::new(2f64.powi(k as i32), 0.0)
            } else if vanishes {
                Complex64::new(0.0, 0.0)
            } else {
                let wk = Phase::rational((pw as u128 * pow2_mod(k, qw) % qw as u128) as i64, qw).expect("q > 0");
                (Complex64::new(1.0, 0.0) - wk.numeric) / (Complex64::new(1.0, 0.0) - w.numeric)
            };
            GeometricFactor { h, k, value, vanishes }
        }
        None => {
            let theta = z.numeric.arg();
            let turn = |m: f64| Complex64::from_polar(1.0, (theta * m).rem_euclid(std::f64::consts::TAU));
            let m = 2f64.powi(h as i32) - 1.0;
            let w = turn(m);
            let value = if (w - 1.0).norm() < crate::phase::PHASE_TOLERANCE {
                Complex64::new(2f64.powi(k as i32), 0.0)
            } else {
                (Complex64::new(1.0, 0.0) - turn(m * 2f64.powi(k as i32))) / (Complex64::new(1.0, 0.0) - w)
            };
            GeometricFactor { h, k, value, vanishes: value.norm() < 1e-9 }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub z: Phase,
    pub depth: usize,
    /// Σ_{i<2^j} Ω_z(U^i S₂^j S₂*^j U^{−i}) = 1 for each level j ≤ depth
    pub level_sums_one: bool,
    /// Ω_z(P_α) = 2^{−|α|} for all |α| ≤ depth
    pub projections_ok: bool,
    pub hypothesis: Option<OrderViolation>,
    /// factors for 1 ≤ h ≤ 6, 0 ≤ k ≤ min(depth, 6)
    pub factors: Vec<GeometricFactor>,
    /// all (h, k) ≤ 64 where the factor vanishes
    pub vanishing_factors: Vec<(u32, u32)>,
    pub passed: bool,
}

/// U^i S₂^j = S_α for 0 ≤ i < 2^j, where the letters of α are the binary
/// digits of i, least significant first (1 for a set bit).
fn translate_word(i: u64, j: usize) -> Vec<u8> {
    (0..j).map(|m| if i >> m & 1 == 1 { 1 } else { 2 }).collect()
}

pub fn omega_z_consistency(z: &Phase, depth: usize) -> ConsistencyReport {
    let depth = depth.min(20);
    let one = BigRational::one();
    let eval = |a: &[u8], b: &[u8]| omega_z(a, b, 0, z, true).expect("override").coeff;
    let level_sums_one = (0..=depth).all(|j| {
        let sum = (0..1u64 << j).map(|i| {
            let a = translate_word(i, j);
            eval(&a, &a)
        });
        sum.fold(BigRational::zero(), |acc, v| acc + v) == one
    });
    let mut projections_ok = true;
    for j in 0..=depth.min(12) {
        let expect = BigRational::new(BigInt::one(), BigInt::one() << j);
        for i in 0..1u64 << j {
            let a = translate_word(i, j);
            let v = omega_z(&a, &a, 0, z, true).expect("override");
            projections_ok &= v.coeff == expect && v.phase.numeric == Complex64::new(1.0, 0.0);
        }
    }
    let factors: Vec<GeometricFactor> =
        (1..=6).flat_map(|h| (0..=depth.min(6) as u32).map(move |k| (h, k))).map(|(h, k)| geometric_factor(z, h, k)).collect();
    let vanishing_factors = match z.exact {
        Some(_) => (1..=ORDER_BOUND)
            .flat_map(|h| (0..=ORDER_BOUND).map(move |k| (h, k)))
            .filter(|&(h, k)| geometric_factor(z, h, k).vanishes)
            .collect(),
        None => factors.iter().filter(|f| f.vanishes).map(|f| (f.h, f.k)).collect(),
    };
    let hypothesis = order_hypothesis(z, ORDER_BOUND);
    let passed = level_sums_one && projections_ok && (hypothesis.is_some() || factors.iter().all(|f| !f.vanishes));
    ConsistencyReport { z: *z, depth, level_sums_one, projections_ok, hypothesis, factors, vanishing_factors, passed }
}

/// ⟨S_α S_β* e_n, e_n⟩ ∈ {0, 1}.
pub fn vector_state(sys: &BranchingSystem, n: &Index, alpha: &[u8], beta: &[u8]) -> u8 {
    u8::from(sys.word_map(alpha, beta, n).as_ref() == Some(n))
}
