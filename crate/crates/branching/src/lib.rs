//! Branching function systems of order 2, i.e. permutative representations
//! of the Cuntz algebra O₂ given by a pair of injections with complementary
//! ranges.

mod coding;
mod error;
mod orbits;
mod system;
pub mod words;

pub use coding::{coding, factorize, separating_word, shift_cycles, CodingPrefix, CodingTail, ShiftCycles, WordCycle};
pub use error::BranchError;
pub use orbits::{
    bijection_orbit_structure, char_poly_factors, char_poly_string, core_of, is_pure, orbit_structure, point_spectrum, Count,
    OrbitStructure, Purity, SpectrumReport,
};
pub use system::{validate_branching, BranchingReport, BranchingSystem, Digit, MapCheck};

pub use permrep_maps::{CoreKind, CoreSet};
