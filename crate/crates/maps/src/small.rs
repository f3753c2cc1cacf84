//! Machine-word evaluation of rule maps for hot loops. Mirrors
//! `RuleInjection::try_apply` / `preimage`; any value leaving i64 is
//! reported as `Overflow` so callers can fall back to `BigInt`.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::RuleInjection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("value left the machine-word range")]
pub struct Overflow;

#[derive(Clone, Debug)]
pub struct SmallRule {
    lo: Option<i64>,
    modulus: i64,
    rules: Vec<Option<(i64, i64)>>,
    exceptions: HashMap<i64, i64>,
    exception_preimage: HashMap<i64, i64>,
    removed: std::collections::HashSet<i64>,
}

impl SmallRule {
    /// `None` when some coefficient does not fit a machine word.
    pub fn new(f: &RuleInjection) -> Option<Self> {
        let lo = match f.domain().lower_bound() {
            Some(b) => Some(b.to_i64()?),
            None => None,
        };
        let m = f.modulus();
        let rules = (0..m)
            .map(|r| match f.rule(r) {
                Some(a) => Some((a.slope.to_i64()?, a.offset.to_i64()?)).map(Some),
                None => Some(None),
            })
            .collect::<Option<Vec<_>>>()?;
        let mut exceptions = HashMap::new();
        let mut exception_preimage = HashMap::new();
        for (k, v) in f.exceptions() {
            let (k, v) = (k.to_i64()?, v.to_i64()?);
            exceptions.insert(k, v);
            exception_preimage.insert(v, k);
        }
        let removed = f.removed().iter().map(|k| k.to_i64()).collect::<Option<_>>()?;
        Some(SmallRule { lo, modulus: i64::try_from(m).ok()?, rules, exceptions, exception_preimage, removed })
    }

    fn in_domain(&self, n: i64) -> bool {
        self.lo.map_or(true, |lo| n >= lo)
    }

    pub fn try_apply(&self, n: i64) -> Result<Option<i64>, Overflow> {
        if !self.in_domain(n) {
            return Ok(None);
        }
        if let Some(&v) = self.exceptions.get(&n) {
            return Ok(Some(v));
        }
        if self.removed.contains(&n) {
            return Ok(None);
        }
        match self.rules[n.rem_euclid(self.modulus) as usize] {
            Some((a, b)) => {
                let v = a as i128 * n as i128 + b as i128;
                i64::try_from(v).map(Some).map_err(|_| Overflow)
            }
            None => Ok(None),
        }
    }

    /// Preimage without the domain check on `n`.
    pub fn preimage(&self, n: i64) -> Result<Option<i64>, Overflow> {
        if let Some(&k) = self.exception_preimage.get(&n) {
            return Ok(Some(k));
        }
        for (r, rule) in self.rules.iter().enumerate() {
            let Some((a, b)) = *rule else { continue };
            let d = n as i128 - b as i128;
            if d % a as i128 != 0 {
                continue;
            }
            let x = i64::try_from(d / a as i128).map_err(|_| Overflow)?;
            if x.rem_euclid(self.modulus) as usize != r || !self.in_domain(x) {
                continue;
            }
            if self.exceptions.contains_key(&x) || self.removed.contains(&x) {
                continue;
            }
            return Ok(Some(x));
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{big, Affine, Domain};

    #[test]
    fn agrees_with_bigint_path() {
        let f = RuleInjection::new(
            Domain::NatFromOne,
            2,
            vec![(1, Affine::new(2, 1)), (0, Affine::new(2, -3))],
            [(big(2), big(9))].into_iter().collect(),
            [big(4)].into_iter().collect(),
        )
        .unwrap();
        let s = SmallRule::new(&f).unwrap();
        for n in -5i64..200 {
            assert_eq!(s.try_apply(n).unwrap(), f.try_apply(&big(n)).and_then(|v| v.to_i64()));
            assert_eq!(s.preimage(n).unwrap(), f.preimage(&big(n)).and_then(|v| v.to_i64()));
        }
        assert_eq!(s.try_apply(i64::MAX - 1), Err(Overflow));
    }
}
