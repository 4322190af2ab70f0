use std::f64::consts::PI;

use rayon::prelude::*;

use super::{ParabolicGeometry, ParabolicPoint};
use crate::error::{invalid, Error, Result};
use crate::free_space::TwoLevelAtom;
use crate::numerics::{integrate_1d, integrate_1d_panels, integrate_2d, Estimate, QuadratureSpec};

/// Golden-rule rate with plane-wave modes, `|f_k| = 1`:
/// `(d^2 k^3 / 2) (2 pi)^-2 int dphi int dtheta sin^3(theta)`.
pub fn free_space_rate_integral(atom: &TwoLevelAtom, spec: &QuadratureSpec) -> Result<Estimate> {
    let k = atom.omega_eg();
    let prefactor = atom.dipole().powi(2) * k.powi(3) / (8.0 * PI * PI);
    let est = integrate_2d(
        |_phi, theta| theta.sin().powi(3),
        (0.0, 2.0 * PI),
        (0.0, PI),
        spec,
    )?;
    Ok(scale(est, prefactor))
}

fn scale(est: Estimate, by: f64) -> Estimate {
    Estimate {
        value: est.value * by,
        error: est.error * by.abs(),
        ..est
    }
}

fn check_atom(geometry: &ParabolicGeometry, atom: &TwoLevelAtom) -> Result<()> {
    let k = geometry.wave_number();
    if ((atom.omega_eg() - k) / k).abs() > 1e-12 {
        return Err(invalid(
            "atom",
            format!(
                "omega_eg = {} does not match the wave number {k}",
                atom.omega_eg()
            ),
        ));
    }
    Ok(())
}

/// Rate correction `eta = Gamma~ / Gamma` at distance `rho` from the axis and
/// axial distance `depth = z + f` from the vertex.
///
/// The azimuthal integral of the standing-wave factor is done exactly,
/// `int sin^2(a cos(phi) + b) dphi = pi (1 - J0(2a) cos(2b))`, which leaves
/// `eta = (3/4) int sin^3(theta) (1 - J0(2 k rho sin(theta)) cos(2 k depth cos(theta))) dtheta`.
/// The polar range is cut into panels no wider than `pi / (4 k d + 4)`,
/// `d` the distance from the vertex, before adaptive refinement.
pub(crate) fn eta_quadrature(
    k: f64,
    rho: f64,
    depth: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let a = 2.0 * k * rho;
    let b = 2.0 * k * depth;
    let panels = (4.0 * k * rho.hypot(depth) + 4.0).ceil() as usize;
    let width = PI / panels as f64;
    let breaks: Vec<f64> = (0..=panels).map(|i| i as f64 * width).collect();
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let bessel = if a == 0.0 { 1.0 } else { libm::j0(a * s) };
        s * s * s * (1.0 - bessel * (b * c).cos())
    };
    let budget = QuadratureSpec::new(
        spec.rel_tol(),
        spec.abs_tol(),
        spec.max_subdivisions().max(panels),
    )?;
    let est = integrate_1d_panels(integrand, &breaks, &budget)?;
    Ok(scale(est, 0.75))
}

/// Spontaneous decay rate inside the mirror with the standing-wave modes
/// `sqrt(2) sin(k n.(r - r_P))`, dipole along the axis.
///
/// Points on the mirror surface are accepted; the rate at the vertex is
/// zero.
pub fn modified_rate(
    geometry: &ParabolicGeometry,
    atom: &TwoLevelAtom,
    point: &ParabolicPoint,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    check_atom(geometry, atom)?;
    if point.eta() > geometry.focal_length() * (1.0 + 1e-12) {
        return Err(Error::OutsideCavity(format!(
            "(z, rho) = ({}, {})",
            point.z(),
            point.rho()
        )));
    }
    let est = eta_quadrature(geometry.wave_number(), point.rho(), point.z(), spec)?;
    Ok(scale(est, atom.decay_rate()))
}

/// On-axis rate correction at focus-frame coordinate `z`.
pub fn on_axis_eta(geometry: &ParabolicGeometry, z: f64) -> f64 {
    on_axis_eta_of(geometry.wave_number() * (z + geometry.focal_length()))
}

/// `eta(x) = 1 + 3 cos(2x) / (4x^2) - 3 sin(2x) / (8x^3)`, `x = k(z + f)`.
/// Below `x = 1e-2` the cancelling terms are replaced by their series
/// `3 sum_{n>=1} (-1)^{n+1} (2x)^{2n} / ((2n)! (2n+1) (2n+3))`.
pub fn on_axis_eta_of(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-2 {
        let y = 4.0 * x * x;
        // n = 1..4
        3.0 * y * (1.0 / 30.0 - y * (1.0 / 840.0 - y * (1.0 / 45360.0 - y / 3991680.0)))
    } else {
        let (s, c) = (2.0 * x).sin_cos();
        1.0 + 3.0 * c / (4.0 * x * x) - 3.0 * s / (8.0 * x * x * x)
    }
}

/// On-axis rate correction sampled between two focus-frame coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RateProfile {
    pub positions: Vec<ParabolicPoint>,
    /// Closed-form `eta`.
    pub eta: Vec<f64>,
    /// Quadrature of the full angular integral, when requested.
    pub quadrature: Option<Vec<Estimate>>,
}

impl RateProfile {
    /// Largest error estimate among the quadrature samples.
    pub fn max_quadrature_error(&self) -> Option<f64> {
        self.quadrature
            .as_ref()
            .map(|q| q.iter().map(|e| e.error).fold(0.0, f64::max))
    }

    /// Largest `|eta_quadrature - eta_closed|`.
    pub fn max_discrepancy(&self) -> Option<f64> {
        self.quadrature.as_ref().map(|q| {
            q.iter()
                .zip(&self.eta)
                .map(|(e, c)| (e.value - c).abs())
                .fold(0.0, f64::max)
        })
    }
}

/// Samples `eta` on `samples` equidistant axis points with focus-frame
/// coordinates in `z_range`, optionally also by quadrature.
pub fn rate_profile(
    geometry: &ParabolicGeometry,
    z_range: (f64, f64),
    samples: usize,
    quadrature: Option<&QuadratureSpec>,
) -> Result<RateProfile> {
    if samples < 2 {
        return Err(invalid(
            "samples",
            format!("need at least 2, got {samples}"),
        ));
    }
    let (z0, z1) = z_range;
    if !(z1 > z0) {
        return Err(invalid(
            "z_range",
            format!("need z0 < z1, got ({z0}, {z1})"),
        ));
    }
    let f = geometry.focal_length();
    if z0 < -f {
        return Err(Error::OutsideCavity(format!(
            "z = {z0} lies behind the vertex at -{f}"
        )));
    }
    let step = (z1 - z0) / (samples - 1) as f64;
    let positions = (0..samples)
        .map(|i| {
            geometry.point_from_focus(
                if i + 1 == samples {
                    z1
                } else {
                    z0 + i as f64 * step
                },
                0.0,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = positions
        .iter()
        .map(|p| on_axis_eta(geometry, p.z_focus()))
        .collect();
    let quadrature = match quadrature {
        None => None,
        Some(spec) => {
            let k = geometry.wave_number();
            let est: Result<Vec<Estimate>> = positions
                .par_iter()
                .map(|p| eta_quadrature(k, 0.0, p.z(), spec))
                .collect();
            Some(est?)
        }
    };
    Ok(RateProfile {
        positions,
        eta,
        quadrature,
    })
}

/// Relative change of the free-space rate when the polar integral is
/// restricted to `[theta_0, pi - theta_0]`:
/// `(3/4) * 2 int_0^theta_0 sin^3(theta) dtheta`.
pub fn cutoff_correction(geometry: &ParabolicGeometry, spec: &QuadratureSpec) -> Result<Estimate> {
    let theta0 = geometry.theta0();
    let est = integrate_1d(|t| t.sin().powi(3), 0.0, theta0, spec)?;
    Ok(scale(est, 1.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-11, 1e-15, 20_000).unwrap()
    }

    fn series_oracle(x: f64) -> f64 {
        // partial sums of the full alternating series, summed far past convergence
        let mut term = 1.0;
        let mut sum = 0.0;
        let y = 2.0 * x;
        for n in 1..40 {
            let nf = n as f64;
            term *= y * y / ((2.0 * nf - 1.0) * (2.0 * nf));
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / ((2.0 * nf + 1.0) * (2.0 * nf + 3.0));
        }
        3.0 * sum
    }

    #[test]
    fn eta_at_pi() {
        let x = PI;
        assert!((on_axis_eta_of(x) - (1.0 + 3.0 / (4.0 * PI * PI))).abs() < 1e-12);
    }

    #[test]
    fn eta_series_matches_direct() {
        for x in [1e-2, 0.5, 1.0, 2.0] {
            assert!((on_axis_eta_of(x) - series_oracle(x)).abs() < 1e-12, "{x}");
        }
        for x in [1e-6, 1e-3, 9.9e-3] {
            let rel = (on_axis_eta_of(x) - series_oracle(x)) / series_oracle(x);
            assert!(rel.abs() < 1e-13, "{x}: {rel}");
        }
        assert_eq!(on_axis_eta_of(0.0), 0.0);
        assert!((on_axis_eta_of(1e-3) / 1e-6 - 0.4).abs() < 1e-4);
    }

    #[test]
    fn eta_envelope_and_positivity() {
        for i in 1..4000 {
            let x = i as f64 * 0.025;
            let e = on_axis_eta_of(x);
            assert!(e >= 0.0);
            assert!((e - 1.0).abs() <= 3.0 / (4.0 * x * x) + 3.0 / (8.0 * x * x * x) + 1e-15);
        }
    }

    #[test]
    fn quadrature_matches_closed_form_on_axis() {
        for x in [0.1, 1.0, PI, 17.3, 100.0] {
            let q = eta_quadrature(1.0, 0.0, x, &spec()).unwrap();
            assert!(
                ((q.value - on_axis_eta_of(x)) / on_axis_eta_of(x)).abs() < 1e-9,
                "{x}"
            );
        }
    }

    #[test]
    fn bessel_reduction_matches_full_double_integral() {
        let (k, rho, depth) = (1.3, 0.8, 1.7);
        let direct = integrate_2d(
            |phi, theta| {
                let s = theta.sin();
                s * s
                    * s
                    * (k * (rho * phi.cos() * s + depth * theta.cos()))
                        .sin()
                        .powi(2)
            },
            (0.0, 2.0 * PI),
            (0.0, PI),
            &QuadratureSpec::new(1e-11, 1e-14, 4000).unwrap(),
        )
        .unwrap()
        .value;
        let reduced = eta_quadrature(k, rho, depth, &spec()).unwrap().value;
        assert!((3.0 / (4.0 * PI) * direct - reduced).abs() < 1e-9);
    }

    #[test]
    fn free_space_integral_recovers_gamma() {
        let atom = TwoLevelAtom::with_decay_rate(1e3, 1.0).unwrap();
        let est = free_space_rate_integral(&atom, &QuadratureSpec::default()).unwrap();
        assert!((est.value / atom.decay_rate() - 1.0).abs() < 1e-10);
        let doubled = TwoLevelAtom::new(1e3, 2.0 * atom.dipole(), [0.0, 0.0, 1.0]).unwrap();
        let est2 = free_space_rate_integral(&doubled, &QuadratureSpec::default()).unwrap();
        assert!((est2.value / est.value - 4.0).abs() < 1e-10);
    }

    #[test]
    fn vertex_rate_vanishes() {
        let g = ParabolicGeometry::new(2.0, 3.0).unwrap();
        let atom = TwoLevelAtom::with_decay_rate(3.0, 0.01).unwrap();
        let p = g.point(0.0, 0.0).unwrap();
        assert!(modified_rate(&g, &atom, &p, &spec()).unwrap().value.abs() < 1e-14);
        let outside = g.point(0.0, 1.0).unwrap();
        assert!(matches!(
            modified_rate(&g, &atom, &outside, &spec()),
            Err(Error::OutsideCavity(_))
        ));
        let wrong = TwoLevelAtom::with_decay_rate(2.0, 0.01).unwrap();
        assert!(modified_rate(&g, &wrong, &p, &spec()).is_err());
    }

    #[test]
    fn cutoff_matches_closed_form() {
        for kf in [10.0, 100.0] {
            let g = ParabolicGeometry::new(1.0, kf).unwrap();
            let a = g.theta0();
            let exact = 1.5 * (2.0 / 3.0 - a.cos() + a.cos().powi(3) / 3.0);
            let q = cutoff_correction(&g, &QuadratureSpec::default())
                .unwrap()
                .value;
            assert!(((q - exact) / exact).abs() < 1e-6, "{q} {exact}");
        }
    }

    #[test]
    fn profile_layout() {
        let g = ParabolicGeometry::new(2.0, 0.25 * PI).unwrap();
        let p = rate_profile(&g, (-2.0, 2.0), 41, Some(&spec())).unwrap();
        assert_eq!(p.positions.len(), 41);
        assert_eq!(p.eta[0], 0.0);
        assert!(p.max_discrepancy().unwrap() < 1e-9);
        assert!(rate_profile(&g, (-2.0, 2.0), 1, None).is_err());
        assert!(rate_profile(&g, (-3.0, 2.0), 5, None).is_err());
    }
}
