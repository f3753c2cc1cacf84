//! Multi-indices P(I), the standard constructions realizing them,
//! decomposition into cyclic components, component typing and
//! regularity of the coding map.

mod components;
mod error;
mod kawamura;
mod multiindex;
mod rep;

pub use components::{o2_components, q2_components, Component, Partition};
pub use error::ClassifyError;
pub use kawamura::{direct_sum, kawamura_finite, kawamura_infinite, ones_plus_twos};
pub use multiindex::{flipflop_image, is_irreducible_pi, normalize_multiindex, MultiIndex, Normalized};
pub use rep::{
    classify_component, classify_o2_component, q2_decomposable, regularity_verdict, Decomposition, RegularityReport,
    RegularityVerdict, RepClass,
};
