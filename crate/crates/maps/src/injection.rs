use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::product::ProductCore;
use crate::{Domain, MapError, ProductInjection, RuleInjection};

/// Point of a scalar domain or of ℤ×ℕ₁.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Int(BigInt),
    Pair(BigInt, BigInt),
}

impl Index {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Index::Int(n.into())
    }

    pub fn pair(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        Index::Pair(n.into(), m.into())
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Index::Int(n) => Some(n),
            Index::Pair(..) => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Int(n) => write!(f, "{n}"),
            Index::Pair(n, m) => write!(f, "({n},{m})"),
        }
    }
}

impl FromStr for Index {
    type Err = MapError;

    /// `"5"`, `"(3,1)"` or `"3,1"`.
    fn from_str(s: &str) -> Result<Self, MapError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || MapError::Unsupported(format!("cannot parse index {s:?}"));
        match t.split_once(',') {
            Some((a, b)) => Ok(Index::Pair(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
            None => Ok(Index::Int(t.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use crate::json::{IndexJson, JsonInt};
        match self {
            Index::Int(n) => IndexJson::Int(JsonInt(n.clone())).serialize(s),
            Index::Pair(n, m) => IndexJson::Pair(JsonInt(n.clone()), JsonInt(m.clone())).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = crate::json::IndexJson::deserialize(d)?;
        v.into_index().map_err(serde::de::Error::custom)
    }
}

/// Either kind of injection the rest of the workspace handles.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Injection {
    Product(ProductInjection),
    Rule(RuleInjection),
}

impl Injection {
    pub fn domain(&self) -> Domain {
        match self {
            Injection::Rule(f) => f.domain(),
            Injection::Product(_) => Domain::ProductZxN,
        }
    }

    pub fn as_rule(&self) -> Option<&RuleInjection> {
        match self {
            Injection::Rule(f) => Some(f),
            Injection::Product(_) => None,
        }
    }

    pub fn as_product(&self) -> Option<&ProductInjection> {
        match self {
            Injection::Product(f) => Some(f),
            Injection::Rule(_) => None,
        }
    }

    pub fn contains(&self, i: &Index) -> bool {
        match (self, i) {
            (Injection::Rule(f), Index::Int(n)) => f.domain().contains(n),
            (Injection::Product(_), Index::Pair(_, m)) => *m >= BigInt::from(1),
            _ => false,
        }
    }

    pub fn try_apply(&self, i: &Index) -> Option<Index> {
        match (self, i) {
            (Injection::Rule(f), Index::Int(n)) => f.try_apply(n).map(Index::Int),
            (Injection::Product(f), Index::Pair(n, m)) => f.try_apply(n, m).map(|(a, b)| Index::Pair(a, b)),
            _ => None,
        }
    }

    pub fn apply(&self, i: &Index) -> Result<Index, MapError> {
        if !self.contains(i) {
            return Err(MapError::OutsideDomain { index: i.to_string(), domain: self.domain() });
        }
        self.try_apply(i).ok_or_else(|| MapError::Undefined(i.to_string()))
    }

    /// Preimage if `i` is in the range.
    pub fn invert(&self, i: &Index) -> Result<Option<Index>, MapError> {
        if !self.contains(i) {
            return Err(MapError::OutsideDomain { index: i.to_string(), domain: self.domain() });
        }
        Ok(self.preimage(i))
    }

    pub fn preimage(&self, i: &Index) -> Option<Index> {
        match (self, i) {
            (Injection::Rule(f), Index::Int(n)) => f.preimage(n).map(Index::Int),
            (Injection::Product(f), Index::Pair(n, m)) => f.preimage(n, m).map(|(a, b)| Index::Pair(a, b)),
            _ => None,
        }
    }

    /// `Some(true)` when the Wold core is certified empty, `Some(false)` when
    /// certified nonempty.
    pub fn core_empty(&self, budget: u64) -> Option<bool> {
        match self {
            Injection::Rule(f) => {
                let c = crate::core_set(f, budget);
                if c.kind == crate::CoreKind::WholeDomain || !c.cycles.is_empty() {
                    Some(false)
                } else if c.complete {
                    Some(true)
                } else {
                    None
                }
            }
            Injection::Product(f) => match f.core_certificate() {
                ProductCore::Empty => Some(true),
                ProductCore::NonEmpty { .. } => Some(false),
                ProductCore::Undecided(_) => None,
            },
        }
    }
}

impl From<RuleInjection> for Injection {
    fn from(f: RuleInjection) -> Self {
        Injection::Rule(f)
    }
}

impl From<ProductInjection> for Injection {
    fn from(f: ProductInjection) -> Self {
        Injection::Product(f)
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Injection::Rule(g) => write!(f, "{g}"),
            Injection::Product(g) => {
                write!(f, "(n,m) ↦ (n{:+}, {}) with {} overridden rows", g.shift(), g.second(), g.overrides().len())
            }
        }
    }
}
