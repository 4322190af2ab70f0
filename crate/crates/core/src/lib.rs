//! Dynamics of a two-level atom exchanging a single photon with quantized
//! radiation in four settings: one cavity mode, free space, a closed
//! metallic sphere and a half-open parabolic mirror.
//!
//! Units: `hbar = c = epsilon_0 = 1` throughout. Single-mode times are in
//! units of `1/|g|`; the multimode settings usually set `Gamma = 1`.

// `!(x > 0.0)` style guards reject NaN on purpose; node tables keep full digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod free_space;
pub mod jcp;
pub mod notice;
pub mod numerics;
pub mod parabolic_mirror;
pub mod spherical_cavity;
pub mod trace;

pub use error::{Error, Result};
pub use notice::Notice;
pub use trace::AmplitudeTrace;
