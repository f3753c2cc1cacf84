use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::StateError;

pub const PHASE_TOLERANCE: f64 = 1e-12;

/// A point of the unit circle, exact when it is e^{2πi p/q}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Phase {
    /// (p, q) in lowest terms with 0 ≤ p < q
    pub exact: Option<(u64, u64)>,
    #[serde(serialize_with = "ser_complex")]
    pub numeric: Complex64,
}

pub(crate) fn ser_complex<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

/// cos, sin of 2πp/q, exact for q ∈ {1, 2, 4}.
fn rotation(p: u64, q: u64) -> Complex64 {
    match (p, q) {
        (0, 1) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, TAU * (p as f64) / (q as f64)),
    }
}

impl Phase {
    pub fn one() -> Self {
        Phase::rational(0, 1).expect("q = 1")
    }

    /// e^{2πi p/q}.
    pub fn rational(p: i64, q: u64) -> Result<Self, StateError> {
        if q == 0 {
            return Err(StateError::Phase("q must be positive".into()));
        }
        let r = p.rem_euclid(q as i64) as u64;
        let g = r.gcd(&q);
        let (p, q) = (r / g, q / g);
        Ok(Phase { exact: Some((p, q)), numeric: rotation(p, q) })
    }

    pub fn numeric(z: Complex64) -> Result<Self, StateError> {
        if (z.norm() - 1.0).abs() > PHASE_TOLERANCE {
            return Err(StateError::Phase(format!("|{z}| ≠ 1")));
        }
        Ok(Phase { exact: None, numeric: z })
    }

    /// `p/q` (a rotation), `1`, `-1`, `x+yi` or `x-yi`.
    pub fn parse(s: &str) -> Result<Self, StateError> {
        let s = s.trim();
        let bad = || StateError::Phase(format!("cannot read {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            return Phase::rational(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        }
        match s {
            "1" => return Ok(Phase::one()),
            "-1" => return Phase::rational(1, 2),
            _ => {}
        }
        let body = s.strip_suffix('i').ok_or_else(bad)?;
        let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(i, _)| i).ok_or_else(bad)?;
        let re: f64 = body[..cut].parse().map_err(|_| bad())?;
        let im_s = &body[cut..];
        let im: f64 = match im_s {
            "+" => 1.0,
            "-" => -1.0,
            _ => im_s.parse().map_err(|_| bad())?,
        };
        Phase::numeric(Complex64::new(re, im))
    }

    pub fn order(&self) -> Option<u64> {
        self.exact.map(|(_, q)| q)
    }

    pub fn pow(&self, h: i64) -> Phase {
        match self.exact {
            Some((p, q)) => {
                let e = ((p as i128 * h as i128).rem_euclid(q as i128)) as i64;
                Phase::rational(e, q).expect("q > 0")
            }
            None => Phase { exact: None, numeric: self.numeric.powi(h.clamp(i32::MIN as i64, i32::MAX as i64) as i32) },
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some((0, _)) => write!(f, "1"),
            Some((p, q)) => write!(f, "e^(2πi·{p}/{q})"),
            None => write!(f, "{}", self.numeric),
        }
    }
}

/// `Some((h, k))` when `order = (2^h − 1)·2^k` with 1 ≤ h ≤ bound and
/// 0 ≤ k ≤ bound.
pub fn order_form(order: u64, bound: u32) -> Option<(u32, u32)> {
    if order == 0 {
        return None;
    }
    let k = order.trailing_zeros();
    let m = order >> k;
    let h = (m as u128 + 1).trailing_zeros();
    let is_mersenne = (m as u128 + 1).is_power_of_two();
    (is_mersenne && k <= bound && h >= 1 && h <= bound).then_some((h, k))
}
