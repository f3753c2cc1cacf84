use permrep_branching::BranchError;
use permrep_maps::MapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtError {
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("σ{0} is not certified pure; use build_tau with a matching")]
    NotPure(u8),
    #[error("not extendible: {0}")]
    NotExtendible(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("not a Q₂ system: {0}")]
    Invalid(String),
}
