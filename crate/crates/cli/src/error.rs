use permrep_branching::BranchError;
use permrep_classify::ClassifyError;
use permrep_endo::EndoError;
use permrep_extension::ExtError;
use permrep_maps::MapError;
use permrep_states::StateError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed input: {0}")]
    Schema(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    State(#[from] StateError),
}
