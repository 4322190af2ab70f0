//! Special functions, root finding, quadrature, ODE integration and the
//! echo-series evaluator shared by the physics modules.

mod bessel;
pub mod ode;
mod quadrature;
mod roots;
mod series;
mod splitting;

pub use bessel::{riccati_derivative, spherical_bessel_j, MAX_BESSEL_ORDER};
pub use quadrature::{
    integrate_1d, integrate_1d_panels, integrate_2d, integrate_2d_panels, Estimate, QuadratureSpec,
};
pub use roots::{bisect, find_bessel_eigenvalues, ModeKind, RootBracket};
pub use series::{damped_binomial_series, stable_binomial_series};
pub use splitting::{default_star_step, evolve_star};
