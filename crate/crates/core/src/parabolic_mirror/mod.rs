//! Atom at the focus of a metallic paraboloid `z = rho^2 / (4f)`.
//!
//! Two coordinate frames appear here. Field maps use the vertex frame, in
//! which the mirror vertex sits at `z = 0` and the focus at `z = f`. The
//! rate functions use the focus frame, in which the focus is the origin and
//! the vertex `P` sits at `z = -f`; their natural variable is `z + f`, the
//! axial distance from `P`. [`ParabolicPoint`] converts between the two.

mod geometry;
mod modes;
mod rate;
mod semiclassical;

pub use geometry::{ParabolicGeometry, ParabolicPoint, NEAR_MIRROR_FRACTION};
pub use modes::{chi, discrete_mode, discretized_mu, mode_angular_function};
pub use rate::{
    cutoff_correction, free_space_rate_integral, modified_rate, on_axis_eta, on_axis_eta_of,
    rate_profile, RateProfile,
};
pub use semiclassical::{field_map, semiclassical_field, SemiclassicalField, MIN_FOCAL_SIZE};
