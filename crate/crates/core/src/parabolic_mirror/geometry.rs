use crate::error::{invalid, Result};

/// Points with `eta >= NEAR_MIRROR_FRACTION * f` are flagged as lying in
/// the boundary layer where the two-ray field breaks down.
pub const NEAR_MIRROR_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicGeometry {
    focal_length: f64,
    wave_number: f64,
}

impl ParabolicGeometry {
    pub fn new(focal_length: f64, wave_number: f64) -> Result<Self> {
        if !(focal_length > 0.0) || !focal_length.is_finite() {
            return Err(invalid(
                "focal_length",
                format!("must be > 0, got {focal_length}"),
            ));
        }
        if !(wave_number > 0.0) || !wave_number.is_finite() {
            return Err(invalid(
                "wave_number",
                format!("must be > 0, got {wave_number}"),
            ));
        }
        Ok(Self {
            focal_length,
            wave_number,
        })
    }

    pub fn focal_length(&self) -> f64 {
        self.focal_length
    }

    pub fn wave_number(&self) -> f64 {
        self.wave_number
    }

    pub fn kf(&self) -> f64 {
        self.wave_number * self.focal_length
    }

    /// Smallest polar angle supported by the discrete modes,
    /// `tan(theta_0 / 2) = 1 / (2kf)`.
    pub fn theta0(&self) -> f64 {
        2.0 * (0.5 / self.kf()).atan()
    }

    /// Point given in the vertex frame.
    pub fn point(&self, z: f64, rho: f64) -> Result<ParabolicPoint> {
        if !(rho >= 0.0) || !rho.is_finite() || !z.is_finite() {
            return Err(invalid(
                "rho",
                format!("need finite z and rho >= 0, got ({z}, {rho})"),
            ));
        }
        Ok(ParabolicPoint {
            z,
            rho,
            focal_length: self.focal_length,
        })
    }

    /// Point given in the focus frame.
    pub fn point_from_focus(&self, z: f64, rho: f64) -> Result<ParabolicPoint> {
        self.point(z + self.focal_length, rho)
    }
}

/// Position in the meridian plane, stored in the vertex frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicPoint {
    z: f64,
    rho: f64,
    focal_length: f64,
}

impl ParabolicPoint {
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Axial coordinate measured from the focus.
    pub fn z_focus(&self) -> f64 {
        self.z - self.focal_length
    }

    /// Distance from the focus.
    pub fn focal_distance(&self) -> f64 {
        self.z_focus().hypot(self.rho)
    }

    /// Parabolic coordinates `(xi, eta)` about the focus, with
    /// `rho = 2 sqrt(xi eta)` and `z - f = xi - eta`.
    pub fn parabolic(&self) -> (f64, f64) {
        let r = self.focal_distance();
        let zf = self.z_focus();
        // pick the cancellation-free form for each coordinate
        let (xi, eta) = if zf >= 0.0 {
            let xi = 0.5 * (r + zf);
            (
                xi,
                if xi > 0.0 {
                    self.rho * self.rho / (4.0 * xi)
                } else {
                    0.0
                },
            )
        } else {
            let eta = 0.5 * (r - zf);
            (self.rho * self.rho / (4.0 * eta), eta)
        };
        (xi, eta)
    }

    pub fn eta(&self) -> f64 {
        self.parabolic().1
    }

    /// Inside the mirror: `eta < f`.
    pub fn is_inside(&self) -> bool {
        self.eta() < self.focal_length
    }

    pub fn is_near_mirror(&self) -> bool {
        let eta = self.eta();
        eta >= NEAR_MIRROR_FRACTION * self.focal_length && eta < self.focal_length
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta0_definition() {
        for kf in [0.7, 10.0, 1e4] {
            let g = ParabolicGeometry::new(2.0, kf / 2.0).unwrap();
            assert!(((0.5 * g.theta0()).tan() - 1.0 / (2.0 * kf)).abs() < 1e-16);
        }
        let g = ParabolicGeometry::new(2.0, 5e3).unwrap();
        assert!((g.theta0() - 1e-4).abs() < 1e-10);
    }

    #[test]
    fn mirror_surface_has_eta_f() {
        let g = ParabolicGeometry::new(2.0, 1.0).unwrap();
        for rho in [0.0, 0.3, 2.0, 7.5] {
            let p = g.point(rho * rho / 8.0, rho).unwrap();
            assert!((p.eta() - 2.0).abs() < 1e-12, "{}", p.eta());
        }
    }

    #[test]
    fn parabolic_coordinates_invert() {
        let g = ParabolicGeometry::new(1.5, 1.0).unwrap();
        for (z, rho) in [(0.2, 0.1), (1.5, 0.0), (4.0, 2.5), (-1.0, 3.0)] {
            let p = g.point(z, rho).unwrap();
            let (xi, eta) = p.parabolic();
            assert!((2.0 * (xi * eta).sqrt() - rho).abs() < 1e-12);
            assert!((xi - eta - p.z_focus()).abs() < 1e-12);
        }
    }

    #[test]
    fn inside_test() {
        let g = ParabolicGeometry::new(2.0, 1.0).unwrap();
        assert!(g.point(2.0, 0.0).unwrap().is_inside());
        assert!(g.point(0.01, 0.0).unwrap().is_inside());
        assert!(!g.point(-0.01, 0.0).unwrap().is_inside());
        assert!(!g.point(1.0, 3.0).unwrap().is_inside());
        assert!(g.point(0.05, 0.0).unwrap().is_near_mirror());
        assert!(!g.point(2.0, 0.0).unwrap().is_near_mirror());
        assert!(g.point(0.0, -1.0).is_err());
    }

    #[test]
    fn frames_agree() {
        let g = ParabolicGeometry::new(3.0, 1.0).unwrap();
        let a = g.point(4.0, 1.0).unwrap();
        let b = g.point_from_focus(1.0, 1.0).unwrap();
        assert_eq!(a, b);
    }
}
