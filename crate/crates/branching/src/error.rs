use permrep_maps::MapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BranchError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("σ₁ and σ₂ act on different domains")]
    DomainMismatch,
    #[error("{0} lies in the Wold core of σ₁; no factorization exists")]
    InCore(String),
    #[error("core not certified complete (searched |x| ≤ {0}); raise the budget")]
    IncompleteCore(String),
    #[error("{0} is outside the domain")]
    OutsideDomain(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("not a branching system: {0}")]
    Invalid(String),
}
