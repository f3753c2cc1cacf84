use permrep_branching::BranchError;
use permrep_extension::ExtError;
use permrep_maps::MapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}
