use thiserror::Error;

use crate::Domain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("index {index} is outside the domain {domain:?}")]
    OutsideDomain { index: String, domain: Domain },
    #[error("map is undefined at {0}")]
    Undefined(String),
    #[error("malformed map: {}", .0.join("; "))]
    Structural(Vec<String>),
    #[error("domain mismatch: {0:?} vs {1:?}")]
    DomainMismatch(Domain, Domain),
    #[error("modulus {0} exceeds the supported bound")]
    ModulusTooLarge(String),
    #[error("operation not supported: {0}")]
    Unsupported(String),
}
