//! Quadratic permutation endomorphisms of O₂: monomial expressions in S₁,
//! S₂ and U, their basis action in the canonical representation, and the
//! extendibility table checked against it.

mod check;
mod chi;
mod compile;
mod error;
mod expr;
mod table;

pub use check::{check_candidate_u, endo_table_report, row_report, CandidateReport, Relation, RowReport, VerdictLevel, MEMBERSHIP_NOTE};
pub use chi::{chi_rep, chi_shift, flipflop_intertwiner_check, intertwiner_check, IntertwinerReport};
pub use compile::{compile, term_branch, word_offset};
pub use error::EndoError;
pub use expr::{MonomialExpr, Term};
pub use table::{endo_spec, endo_table, q2_of_endo, rep_of_endo, EndoSpec, Refutation};
