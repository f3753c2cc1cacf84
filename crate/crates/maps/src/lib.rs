//! Exact arithmetic for injections of integer index domains.
//!
//! Maps are piecewise affine by residue class plus a finite exception
//! table. That class is closed under composition and makes equality,
//! injectivity and range membership decidable.

mod congruence;
mod domain;
mod error;
mod injection;
pub mod json;
mod orbit;
mod product;
mod ranges;
mod rule;
mod small;

pub use congruence::{crt, lcm_u64, Class};
pub use domain::Domain;
pub use error::MapError;
pub use injection::{Index, Injection};
pub use orbit::{core_set, expansive_bound, orbit_of, CoreKind, CoreSet, DivergenceWitness, OrbitDescriptor};
pub use product::{product_range_report, ColumnSeq, ProductCore, ProductInjection};
pub use ranges::{range_report, Collision, PieceSource, RangeReport, ValidationReport};
pub use rule::{Affine, RuleInjection};
pub use small::{Overflow, SmallRule};

pub use num_bigint::BigInt;

/// Shorthand for building small constants.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
