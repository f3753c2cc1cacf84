//! JSON helpers: integers travel as numbers when they fit in 64 bits and
//! as decimal strings otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Domain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Serde adapter for `BigInt` fields.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        JsonInt::deserialize(d).map(|j| j.0)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RuleJson {
    pub residue: u64,
    pub slope: JsonInt,
    pub offset: JsonInt,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RuleInjectionJson {
    pub domain: Domain,
    pub modulus: u64,
    pub rules: Vec<RuleJson>,
    #[serde(default)]
    pub exceptions: BTreeMap<String, JsonInt>,
    #[serde(default)]
    pub removed: Vec<JsonInt>,
}

/// Accepted index encodings: number, decimal string, `"(n,m)"` or `[n, m]`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IndexJson {
    Pair(JsonInt, JsonInt),
    Int(JsonInt),
    Text(String),
}

impl IndexJson {
    pub fn into_index(self) -> Result<crate::Index, crate::MapError> {
        match self {
            IndexJson::Pair(a, b) => Ok(crate::Index::Pair(a.0, b.0)),
            IndexJson::Int(a) => Ok(crate::Index::Int(a.0)),
            IndexJson::Text(s) => s.parse(),
        }
    }
}
