use num_complex::Complex64;
use rayon::prelude::*;

use super::{ParabolicGeometry, ParabolicPoint};
use crate::error::{invalid, Error, Result};
use crate::free_space::{
    radiation_zone_notice, wave_amplitude, FieldMap, FieldPoint, GridCoordinates, TwoLevelAtom,
};
use crate::notice::Notice;

/// Smallest `omega_eg f / c` for which the ray picture is used.
pub const MIN_FOCAL_SIZE: f64 = 50.0;

/// Two-ray energy-density amplitude at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalField {
    /// Direct spherical wave, polarised along `e_theta1` about the focus.
    pub spherical: Complex64,
    /// Reflected plane wave, polarised along `e_rho`.
    pub plane: Complex64,
    /// `cos(theta1) = (z - f) / r1`.
    pub cos_theta1: f64,
    /// `sin(theta1) = rho / r1`.
    pub sin_theta1: f64,
}

impl SemiclassicalField {
    /// Components along `(e_rho, e_z)`.
    pub fn cylindrical(&self) -> [Complex64; 2] {
        [
            self.spherical * self.cos_theta1 + self.plane,
            -self.spherical * self.sin_theta1,
        ]
    }

    /// Electric energy density including the interference of the two rays.
    pub fn energy_density(&self) -> f64 {
        self.spherical.norm_sqr()
            + self.plane.norm_sqr()
            + 2.0 * self.cos_theta1 * (self.spherical * self.plane.conj()).re
    }
}

fn check(geometry: &ParabolicGeometry, atom: &TwoLevelAtom) -> Result<()> {
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
    if geometry.kf() < MIN_FOCAL_SIZE {
        return Err(invalid(
            "focal_length",
            format!(
                "omega_eg f / c = {} is below {MIN_FOCAL_SIZE}",
                geometry.kf()
            ),
        ));
    }
    Ok(())
}

fn evaluate(
    geometry: &ParabolicGeometry,
    atom: &TwoLevelAtom,
    point: &ParabolicPoint,
    t: f64,
) -> SemiclassicalField {
    let f = geometry.focal_length();
    let rho = point.rho();
    let r1 = point.focal_distance();
    let (cos1, sin1, transverse1) = if r1 > 0.0 {
        (point.z_focus() / r1, rho / r1, rho / (r1 * r1))
    } else {
        (1.0, 0.0, 0.0)
    };
    let r2 = f * (1.0 + rho * rho / (4.0 * f * f));
    SemiclassicalField {
        spherical: wave_amplitude(atom, r1, transverse1, t),
        plane: wave_amplitude(atom, point.z() + f, rho / (r2 * r2), t),
        cos_theta1: cos1,
        sin_theta1: sin1,
    }
}

/// Direct plus reflected ray amplitude at a point inside the mirror
/// (vertex frame), for an axial dipole at the focus.
pub fn semiclassical_field(
    geometry: &ParabolicGeometry,
    atom: &TwoLevelAtom,
    point: &ParabolicPoint,
    t: f64,
) -> Result<SemiclassicalField> {
    check(geometry, atom)?;
    if !point.is_inside() {
        return Err(Error::OutsideCavity(format!(
            "(z, rho) = ({}, {})",
            point.z(),
            point.rho()
        )));
    }
    Ok(evaluate(geometry, atom, point, t))
}

/// Samples the two-ray field on the `(z, rho)` grid (vertex frame),
/// row-major in `z`. Grid points outside the mirror are skipped.
pub fn field_map(
    geometry: &ParabolicGeometry,
    atom: &TwoLevelAtom,
    z_values: &[f64],
    rho_values: &[f64],
    t: f64,
) -> Result<FieldMap> {
    check(geometry, atom)?;
    if rho_values.iter().any(|r| !(*r >= 0.0)) || z_values.iter().any(|z| !z.is_finite()) {
        return Err(invalid("grid", "need finite z and rho >= 0"));
    }
    let mut inside = Vec::new();
    for &z in z_values {
        for &rho in rho_values {
            let p = geometry.point(z, rho)?;
            if p.is_inside() {
                inside.push(p);
            }
        }
    }
    let points = inside
        .par_iter()
        .map(|p| {
            let field = evaluate(geometry, atom, p, t);
            let notice = if p.is_near_mirror() {
                Some(Notice::NearMirror {
                    eta_over_f: p.eta() / geometry.focal_length(),
                })
            } else {
                radiation_zone_notice(atom, p.focal_distance())
            };
            FieldPoint {
                coords: (p.z(), p.rho()),
                components: [field.spherical, field.plane],
                energy_density: field.energy_density(),
                notice,
            }
        })
        .collect();
    Ok(FieldMap {
        t,
        coordinates: GridCoordinates::Cylindrical,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_space::electric_amplitude;

    fn setup() -> (ParabolicGeometry, TwoLevelAtom) {
        let geometry = ParabolicGeometry::new(10.0, 1e3).unwrap();
        let atom = TwoLevelAtom::with_decay_rate(1e3, 1.0).unwrap();
        (geometry, atom)
    }

    #[test]
    fn axis_is_dark() {
        let (g, a) = setup();
        for z in [1.0, 5.0, 30.0] {
            for t in [-40.0, 12.0, 40.0] {
                let e = semiclassical_field(&g, &a, &g.point(z, 0.0).unwrap(), t).unwrap();
                assert_eq!(e.energy_density(), 0.0);
            }
        }
    }

    #[test]
    fn early_times_match_free_space() {
        let (g, a) = setup();
        for (z, rho) in [(12.0, 3.0), (7.0, 4.0), (15.0, 1.0)] {
            let p = g.point(z, rho).unwrap();
            let t = 9.0;
            let e = semiclassical_field(&g, &a, &p, t).unwrap();
            assert_eq!(e.plane, Complex64::default());
            let r1 = p.focal_distance();
            let free = electric_amplitude(&a, r1, (rho / r1).asin(), t).value;
            assert!((e.spherical - free).norm() <= 1e-12 * free.norm().max(1e-300));
        }
    }

    #[test]
    fn density_symmetric_in_time() {
        let (g, a) = setup();
        let p = g.point(25.0, 8.0).unwrap();
        let fwd = semiclassical_field(&g, &a, &p, 36.0)
            .unwrap()
            .energy_density();
        let back = semiclassical_field(&g, &a, &p, -36.0)
            .unwrap()
            .energy_density();
        assert!((fwd - back).abs() < 1e-14 * fwd);
    }

    #[test]
    fn plane_wave_depends_on_retarded_depth() {
        let (g, a) = setup();
        let e1 = semiclassical_field(&g, &a, &g.point(20.0, 6.0).unwrap(), 35.0)
            .unwrap()
            .plane;
        let e2 = semiclassical_field(&g, &a, &g.point(25.0, 6.0).unwrap(), 40.0)
            .unwrap()
            .plane;
        assert!((e1 - e2).norm() < 1e-12 * e1.norm());
    }

    #[test]
    fn guards() {
        let (g, a) = setup();
        assert!(semiclassical_field(&g, &a, &g.point(1.0, 30.0).unwrap(), 5.0).is_err());
        let small = ParabolicGeometry::new(0.01, 1e3).unwrap();
        assert!(semiclassical_field(&small, &a, &small.point(0.01, 0.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn map_skips_outside_and_flags_boundary() {
        let (g, a) = setup();
        let empty = field_map(&g, &a, &[-5.0, -1.0], &[1.0, 2.0], 5.0).unwrap();
        assert!(empty.is_empty());
        let map = field_map(&g, &a, &[0.5, 10.0, 20.0], &[0.0, 4.0, 20.0], 30.0).unwrap();
        assert!(map
            .points
            .iter()
            .all(|p| g.point(p.coords.0, p.coords.1).unwrap().is_inside()));
        assert!(map
            .notices()
            .any(|n| matches!(n, Notice::NearMirror { .. })));
        let again = field_map(&g, &a, &[0.5, 10.0, 20.0], &[0.0, 4.0, 20.0], -30.0).unwrap();
        for (p, q) in map.points.iter().zip(&again.points) {
            assert!((p.energy_density - q.energy_density).abs() <= 1e-14 * p.energy_density);
        }
    }
}
