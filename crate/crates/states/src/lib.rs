//! The states Ω_z on monomials S_α S_β* U^h, their consistency identities,
//! and vector states of permutative representations.

mod error;
mod omega;
mod phase;

pub use error::StateError;
pub use omega::{
    geometric_factor, omega_z, omega_z_consistency, order_hypothesis, vector_state, ConsistencyReport, GeometricFactor,
    OrderViolation, StateValue, ORDER_BOUND,
};
pub use phase::{order_form, Phase, PHASE_TOLERANCE};
