use permrep_maps::{product_range_report, range_report, Domain, Index, Injection, RangeReport, RuleInjection};
use serde::{Deserialize, Serialize};

use crate::BranchError;

/// Letter of a word: 1 or 2.
pub type Digit = u8;

/// A pair (σ₁, σ₂) on one domain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchingSystem {
    pub sigma1: Injection,
    pub sigma2: Injection,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapCheck {
    pub total: bool,
    pub injective: bool,
    /// first offending index, if any
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingReport {
    pub sigma1: MapCheck,
    pub sigma2: MapCheck,
    /// joint range analysis of σ₁ and σ₂
    pub range: RangeReport,
    pub valid: bool,
}

impl BranchingReport {
    pub fn witness(&self) -> Option<String> {
        self.sigma1
            .witness
            .clone()
            .or_else(|| self.sigma2.witness.clone())
            .or_else(|| self.range.collisions.first().map(|c| c.witness.clone()))
            .or_else(|| self.range.uncovered.clone())
    }
}

impl BranchingSystem {
    pub fn new(sigma1: impl Into<Injection>, sigma2: impl Into<Injection>) -> Result<Self, BranchError> {
        let (sigma1, sigma2) = (sigma1.into(), sigma2.into());
        if sigma1.domain() != sigma2.domain() {
            return Err(BranchError::DomainMismatch);
        }
        Ok(BranchingSystem { sigma1, sigma2 })
    }

    pub fn domain(&self) -> Domain {
        self.sigma1.domain()
    }

    pub fn sigma(&self, i: Digit) -> &Injection {
        if i == 1 {
            &self.sigma1
        } else {
            &self.sigma2
        }
    }

    /// Both maps as rule tables, if they are.
    pub fn rules(&self) -> Option<(&RuleInjection, &RuleInjection)> {
        Some((self.sigma1.as_rule()?, self.sigma2.as_rule()?))
    }

    pub fn contains(&self, n: &Index) -> bool {
        self.sigma1.contains(n)
    }

    /// The unique `(i, m)` with `n = σᵢ(m)`.
    pub fn split(&self, n: &Index) -> Result<(Digit, Index), BranchError> {
        if !self.contains(n) {
            return Err(BranchError::OutsideDomain(n.to_string()));
        }
        match (self.sigma1.preimage(n), self.sigma2.preimage(n)) {
            (Some(m), None) => Ok((1, m)),
            (None, Some(m)) => Ok((2, m)),
            (None, None) => Err(BranchError::Invalid(format!("{n} is in neither range"))),
            (Some(_), Some(_)) => Err(BranchError::Invalid(format!("{n} is in both ranges"))),
        }
    }

    /// S_w e_n: the rightmost letter acts first.
    pub fn apply_word(&self, w: &[Digit], n: &Index) -> Option<Index> {
        let mut x = n.clone();
        for &d in w.iter().rev() {
            x = self.sigma(d).try_apply(&x)?;
        }
        Some(x)
    }

    /// S_w* e_n, `None` when the vector is annihilated.
    pub fn adjoint_word(&self, w: &[Digit], n: &Index) -> Option<Index> {
        let mut x = n.clone();
        for &d in w {
            x = self.sigma(d).preimage(&x)?;
        }
        Some(x)
    }

    /// S_α S_β* e_n.
    pub fn word_map(&self, alpha: &[Digit], beta: &[Digit], n: &Index) -> Option<Index> {
        self.apply_word(alpha, &self.adjoint_word(beta, n)?)
    }

    /// Composition with the flip-flop automorphism: σ₁ and σ₂ exchanged.
    pub fn flipped(&self) -> Self {
        BranchingSystem { sigma1: self.sigma2.clone(), sigma2: self.sigma1.clone() }
    }
}

fn check_rule(f: &RuleInjection) -> MapCheck {
    let v = f.validate();
    let witness = v.undefined_at.clone().or_else(|| v.range.collisions.first().map(|c| c.witness.clone()));
    MapCheck { total: v.total, injective: v.injective && v.range.domain_violations.is_empty(), witness }
}

/// Disjointness and covering of the two ranges, decided exactly.
pub fn validate_branching(sys: &BranchingSystem) -> BranchingReport {
    let (c1, c2, range) = match (&sys.sigma1, &sys.sigma2) {
        (Injection::Rule(a), Injection::Rule(b)) => (check_rule(a), check_rule(b), range_report(&[a, b], &[], a.domain())),
        (Injection::Product(a), Injection::Product(b)) => {
            let one = |f| {
                let r = product_range_report(&[f], false);
                MapCheck { total: true, injective: r.disjoint(), witness: r.collisions.first().map(|c| c.witness.clone()) }
            };
            (one(a), one(b), product_range_report(&[a, b], true))
        }
        _ => unreachable!("constructor rejects mixed domains"),
    };
    let valid = c1.total && c1.injective && c2.total && c2.injective && range.disjoint() && range.covers();
    BranchingReport { sigma1: c1, sigma2: c2, range, valid }
}

#[cfg(test)]
mod tests {
    use super::*;
    use permrep_maps::big;

    fn canonical() -> BranchingSystem {
        BranchingSystem::new(
            RuleInjection::affine(Domain::Integers, 2, 1),
            RuleInjection::affine(Domain::Integers, 2, 0),
        )
        .unwrap()
    }

    #[test]
    fn canonical_is_valid() {
        assert!(validate_branching(&canonical()).valid);
    }

    #[test]
    fn doubled_doubling_collides_at_zero() {
        let d = RuleInjection::affine(Domain::Integers, 2, 0);
        let r = validate_branching(&BranchingSystem::new(d.clone(), d).unwrap());
        assert!(!r.valid);
        assert_eq!(r.witness().as_deref(), Some("0"));
    }

    #[test]
    fn word_maps() {
        let s = canonical();
        // S₁S₂ e₃ = e₁₃
        assert_eq!(s.apply_word(&[1, 2], &Index::int(3)), Some(Index::int(13)));
        assert_eq!(s.adjoint_word(&[1, 2], &Index::int(13)), Some(Index::int(3)));
        assert_eq!(s.adjoint_word(&[2], &Index::int(13)), None);
        assert_eq!(s.split(&Index::int(-1)).unwrap(), (1, Index::int(-1)));
        let _ = big(0);
    }
}
