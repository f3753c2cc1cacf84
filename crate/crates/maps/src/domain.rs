use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Index set a map acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    /// {1, 2, 3, ...}
    NatFromOne,
    /// {0, 1, 2, ...}
    NatFromZero,
    Integers,
    /// pairs (n, m) with n ∈ ℤ and m ≥ 1
    ProductZxN,
}

impl Domain {
    /// Lower bound of a one-sided integer domain.
    pub fn lower_bound(&self) -> Option<BigInt> {
        match self {
            Domain::NatFromOne => Some(BigInt::from(1)),
            Domain::NatFromZero => Some(BigInt::from(0)),
            Domain::Integers | Domain::ProductZxN => None,
        }
    }

    /// Membership for scalar domains; always false for `ProductZxN`.
    pub fn contains(&self, n: &BigInt) -> bool {
        match self {
            Domain::ProductZxN => false,
            _ => self.lower_bound().map_or(true, |lo| *n >= lo),
        }
    }

    pub fn is_scalar(&self) -> bool {
        !matches!(self, Domain::ProductZxN)
    }
}
