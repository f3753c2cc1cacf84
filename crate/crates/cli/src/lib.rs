//! Front end: the built-in catalog, JSON input, and one report per verb.
//! Exit codes: 0 when a verdict was reached (negative ones included), 2
//! when undecided, 1 on malformed input.

mod catalog;
mod error;
mod run;

pub use catalog::{canonical, catalog, p12_realization1, p12_realization2, System, CATALOG};
pub use error::CliError;
pub use run::{parse_index, run, verb_name, Cli, Format, Global, Outcome, Source, Verb, SCHEMA};
