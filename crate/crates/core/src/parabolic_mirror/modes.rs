use std::f64::consts::PI;

use num_complex::Complex64;

use super::ParabolicGeometry;
use crate::error::{invalid, Result};

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(invalid(
            "theta",
            format!("must lie strictly between the poles, got {theta}"),
        ));
    }
    Ok(())
}

/// `chi_mu(theta) = exp(-i mu ln tan(theta/2)) / (sqrt(2 pi) sin theta)`.
pub fn chi(mu: f64, theta: f64) -> Result<Complex64> {
    check_theta(theta)?;
    let u = (0.5 * theta).tan().ln();
    Ok(Complex64::from_polar(
        1.0 / ((2.0 * PI).sqrt() * theta.sin()),
        -mu * u,
    ))
}

/// Angular part `h_{l,mu}(theta, phi) = chi_mu(theta) e^{i l phi} / sqrt(2 pi)`.
pub fn mode_angular_function(l: i64, mu: f64, theta: f64, phi: f64) -> Result<Complex64> {
    Ok(chi(mu, theta)? * Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), l as f64 * phi))
}

/// `mu_m = m pi / ln(2kf)`.
pub fn discretized_mu(geometry: &ParabolicGeometry, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m", "mode index starts at 1"));
    }
    let log = (2.0 * geometry.kf()).ln();
    if !(geometry.kf() > 1.0) {
        return Err(invalid(
            "geometry",
            format!("needs kf > 1, got {}", geometry.kf()),
        ));
    }
    Ok(m as f64 * PI / log)
}

/// Real discrete mode confined to `[theta_0, pi - theta_0]`,
/// `sin(mu_m ln tan(theta/2)) / (sqrt(2 pi ln 2kf) sin theta)`, zero outside.
pub fn discrete_mode(geometry: &ParabolicGeometry, m: u32, theta: f64) -> Result<f64> {
    let mu = discretized_mu(geometry, m)?;
    check_theta(theta)?;
    let theta0 = geometry.theta0();
    if theta < theta0 || theta > PI - theta0 {
        return Ok(0.0);
    }
    let log = (2.0 * geometry.kf()).ln();
    let u = (0.5 * theta).tan().ln();
    Ok((mu * u).sin() / ((2.0 * PI * log).sqrt() * theta.sin()))
}
