//! Permutative extensions of O₂ representations to Q₂: the orbit criterion,
//! construction and counting of all extensions τ, relation checks, and
//! comparison of the resulting unitaries.

mod error;
mod fast;
mod matching;
mod q2;
mod tau;

pub use error::ExtError;
pub use matching::{core_cycles, count_extensions, extendible, matchings, CoreCycles, ExtensionCount, Extendibility, MatchedPair, OrbitMatching};
pub use q2::{coding_orbit_count, tau_orbit_structure, window_points, unitary_equiv_tau, verify_q2, Check, Method, Q2Report, Q2System};
pub use tau::{build_tau, build_tau_pure, LazyTau, Tau};

/// Default window for window-checked properties.
pub const DEFAULT_WINDOW: u64 = 10_000;
/// Default budget for core searches and walks.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
