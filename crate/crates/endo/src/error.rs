use permrep_branching::BranchError;
use permrep_extension::ExtError;
use permrep_maps::MapError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EndoError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("cannot parse {input:?}: {why}")]
    Parse { input: String, why: String },
    /// two terms act on the same basis vectors
    #[error("non-permutative expression: terms overlap on l ≡ {residue} (mod {modulus})")]
    Overlap { residue: u64, modulus: u64 },
    #[error("non-permutative expression: no term acts on l ≡ {residue} (mod {modulus})")]
    Uncovered { residue: u64, modulus: u64 },
    #[error("non-permutative expression: {0}")]
    NotPermutative(String),
    #[error("no table row {0:?}")]
    UnknownRow(String),
    #[error("shift {0} is even; only odd shifts give Q₂ endomorphisms")]
    EvenShift(i64),
}
