//! Spontaneous emission in free space: the golden-rule rate, the
//! pole-approximation amplitudes, the radiated one-photon wave packet and a
//! brute-force discretised-continuum integration of the coupled amplitudes.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::notice::Notice;
use crate::numerics::{default_star_step, evolve_star, integrate_2d, Estimate, QuadratureSpec};
use crate::trace::AmplitudeTrace;

/// Smallest `omega_eg / Gamma` for which the pole approximation is trusted.
pub const MIN_FREQUENCY_TO_RATE: f64 = 10.0;
/// Radiation-zone guard on `r omega_eg / c`.
pub const RADIATION_ZONE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelAtom {
    omega_eg: f64,
    dipole: f64,
    orientation: [f64; 3],
}

impl TwoLevelAtom {
    /// Atom with transition frequency `omega_eg`, dipole magnitude `dipole`
    /// and unit dipole direction `orientation`.
    pub fn new(omega_eg: f64, dipole: f64, orientation: [f64; 3]) -> Result<Self> {
        if !(omega_eg > 0.0) || !omega_eg.is_finite() {
            return Err(invalid("omega_eg", format!("must be > 0, got {omega_eg}")));
        }
        if !(dipole >= 0.0) || !dipole.is_finite() {
            return Err(invalid("dipole", format!("must be >= 0, got {dipole}")));
        }
        let len = orientation.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (len - 1.0).abs() > 1e-12 {
            return Err(invalid(
                "orientation",
                format!("must be a unit vector, |n| = {len}"),
            ));
        }
        let atom = Self {
            omega_eg,
            dipole,
            orientation,
        };
        let gamma = decay_rate(&atom);
        if gamma > 0.0 && omega_eg / gamma < MIN_FREQUENCY_TO_RATE {
            return Err(invalid(
                "dipole",
                format!(
                    "omega_eg/Gamma = {} is below {MIN_FREQUENCY_TO_RATE}",
                    omega_eg / gamma
                ),
            ));
        }
        Ok(atom)
    }

    /// Atom with dipole along `z` sized so that its free-space rate is `gamma`.
    pub fn with_decay_rate(omega_eg: f64, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(invalid("gamma", format!("must be >= 0, got {gamma}")));
        }
        if !(omega_eg > 0.0) || !omega_eg.is_finite() {
            return Err(invalid("omega_eg", format!("must be > 0, got {omega_eg}")));
        }
        let dipole = (3.0 * PI * gamma / omega_eg.powi(3)).sqrt();
        Self::new(omega_eg, dipole, [0.0, 0.0, 1.0])
    }

    pub fn omega_eg(&self) -> f64 {
        self.omega_eg
    }

    pub fn dipole(&self) -> f64 {
        self.dipole
    }

    pub fn orientation(&self) -> [f64; 3] {
        self.orientation
    }

    pub fn decay_rate(&self) -> f64 {
        decay_rate(self)
    }
}

/// `Gamma = omega_eg^3 d^2 / (3 pi)` in units `hbar = c = epsilon_0 = 1`.
pub fn decay_rate(atom: &TwoLevelAtom) -> f64 {
    atom.omega_eg.powi(3) * atom.dipole.powi(2) / (3.0 * PI)
}

/// Excited-state amplitude `exp(-i omega_eg t) exp(-Gamma t / 2)` of the
/// decaying atom, `t >= 0`. The ground energy is the zero of energy.
pub fn excited_amplitude(atom: &TwoLevelAtom, t: f64) -> Result<Complex64> {
    if !(t >= 0.0) {
        return Err(invalid("t", format!("decay branch needs t >= 0, got {t}")));
    }
    Ok(Complex64::from_polar(
        (-0.5 * atom.decay_rate() * t).exp(),
        -atom.omega_eg * t,
    ))
}

/// Excited-state amplitude of the time-reversed solution that ends with the
/// atom fully excited at `t = 0`; its magnitude `exp(Gamma t / 2)` grows
/// towards one. Times `t > 0` belong to [`excited_amplitude`].
pub fn absorbing_state_amplitude(atom: &TwoLevelAtom, t: f64) -> Result<Complex64> {
    if !(t <= 0.0) {
        return Err(invalid(
            "t",
            format!("absorption branch needs t <= 0, got {t}"),
        ));
    }
    Ok(Complex64::from_polar(
        (0.5 * atom.decay_rate() * t).exp(),
        -atom.omega_eg * t,
    ))
}

/// `Some(notice)` when `r` violates the radiation-zone guard.
pub fn radiation_zone_notice(atom: &TwoLevelAtom, r: f64) -> Option<Notice> {
    let x = r * atom.omega_eg;
    (x < RADIATION_ZONE).then_some(Notice::OutsideRadiationZone { r_omega_over_c: x })
}

fn retarded(t: f64, r: f64) -> Option<f64> {
    let s = t.abs() - r;
    (s >= 0.0).then_some(s)
}

/// Normally ordered energy density of the one-photon wave packet at
/// distance `r > 0` and angle `theta` from the dipole axis,
/// `(3 Gamma omega / 8 pi) sin^2(theta) / r^2 exp(-Gamma(|t| - r)) Theta(|t| - r)`.
pub fn energy_density(atom: &TwoLevelAtom, r: f64, theta: f64, t: f64) -> f64 {
    match retarded(t, r) {
        None => 0.0,
        Some(s) => {
            let gamma = atom.decay_rate();
            3.0 * gamma * atom.omega_eg / (8.0 * PI)
                * (theta.sin() / r).powi(2)
                * (-gamma * s).exp()
        }
    }
}

/// Unit vector carrying a one-photon amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// Polar unit vector `e_theta` about the dipole axis.
    Theta,
    /// Azimuthal unit vector `e_phi`.
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedAmplitude {
    pub value: Complex64,
    pub polarization: Polarization,
}

impl DirectedAmplitude {
    /// Cartesian components in a frame whose `z` axis is the dipole.
    pub fn cartesian(&self, theta: f64, phi: f64) -> [Complex64; 3] {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let unit = match self.polarization {
            Polarization::Theta => [ct * cp, ct * sp, -st],
            Polarization::Phi => [-sp, cp, 0.0],
        };
        unit.map(|u| self.value * u)
    }
}

/// Scalar part of the energy-density amplitude,
/// `-i sqrt(3 Gamma omega / 16 pi) Theta e^{i sgn(t) omega (|t|-r)} e^{-Gamma(|t|-r)/2} sin(theta)/r`.
pub(crate) fn wave_amplitude(atom: &TwoLevelAtom, path: f64, transverse: f64, t: f64) -> Complex64 {
    match retarded(t, path) {
        None => Complex64::default(),
        Some(s) => {
            let gamma = atom.decay_rate();
            let prefactor = (3.0 * gamma * atom.omega_eg / (16.0 * PI)).sqrt();
            let phase = t.signum() * atom.omega_eg * s;
            -Complex64::i()
                * Complex64::from_polar(prefactor * (-0.5 * gamma * s).exp() * transverse, phase)
        }
    }
}

/// Electric one-photon energy-density amplitude (polarised along `e_theta`).
pub fn electric_amplitude(atom: &TwoLevelAtom, r: f64, theta: f64, t: f64) -> DirectedAmplitude {
    DirectedAmplitude {
        value: wave_amplitude(atom, r, theta.sin() / r, t),
        polarization: Polarization::Theta,
    }
}

/// Magnetic counterpart: same scalar amplitude along `e_phi`.
pub fn magnetic_amplitude(atom: &TwoLevelAtom, r: f64, theta: f64, t: f64) -> DirectedAmplitude {
    DirectedAmplitude {
        value: wave_amplitude(atom, r, theta.sin() / r, t),
        polarization: Polarization::Phi,
    }
}

/// Which part of the wave-packet energy to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyPart {
    Total,
    Electric,
    Magnetic,
}

/// Spatially integrated wave-packet energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketEnergy {
    /// Quadrature over `r_min <= r <= c|t|`.
    pub quadrature: Estimate,
    /// Analytic contribution of the same density over `0 <= r < r_min`,
    /// where the radiation-zone form is not valid.
    pub inner_correction: f64,
    pub r_min: f64,
}

impl PacketEnergy {
    pub fn total(&self) -> f64 {
        self.quadrature.value + self.inner_correction
    }
}

/// Integrates the energy density (or one of its halves) over all space at
/// time `t`. The radial range starts at `r_min = 10 c / omega_eg`.
pub fn packet_energy(
    atom: &TwoLevelAtom,
    t: f64,
    part: EnergyPart,
    spec: &QuadratureSpec,
) -> Result<PacketEnergy> {
    let r_min = RADIATION_ZONE / atom.omega_eg;
    let reach = t.abs();
    let gamma = atom.decay_rate();
    let weight = match part {
        EnergyPart::Total => 1.0,
        EnergyPart::Electric | EnergyPart::Magnetic => 0.5,
    };
    let density = |r: f64, theta: f64| -> f64 {
        match part {
            EnergyPart::Total => energy_density(atom, r, theta, t),
            EnergyPart::Electric => electric_amplitude(atom, r, theta, t).value.norm_sqr(),
            EnergyPart::Magnetic => magnetic_amplitude(atom, r, theta, t).value.norm_sqr(),
        }
    };
    let quadrature = if reach > r_min {
        integrate_2d(
            |r, theta| 2.0 * PI * r * r * theta.sin() * density(r, theta),
            (r_min, reach),
            (0.0, PI),
            spec,
        )?
    } else {
        Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            intervals: 0,
        }
    };
    let inner_end = r_min.min(reach);
    let inner_correction =
        weight * atom.omega_eg * (-gamma * reach).exp() * ((gamma * inner_end).exp() - 1.0);
    Ok(PacketEnergy {
        quadrature,
        inner_correction,
        r_min,
    })
}

/// Expected energy content `hbar omega_eg (1 - exp(-Gamma |t|))`.
pub fn emitted_energy(atom: &TwoLevelAtom, t: f64) -> f64 {
    atom.omega_eg * (1.0 - (-atom.decay_rate() * t.abs()).exp())
}

/// Coordinates labelling a [`FieldMap`] grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridCoordinates {
    /// `(r, theta)` about the emitter, `theta` from the dipole axis.
    Spherical,
    /// `(z, rho)` with `z` measured from the mirror vertex.
    Cylindrical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldPoint {
    pub coords: (f64, f64),
    /// Complex amplitude components; their meaning depends on the geometry
    /// (free space: `[e_theta, 0]`; parabola: `[e_theta1, e_rho]`).
    pub components: [Complex64; 2],
    /// Electric energy density, including the interference between
    /// non-orthogonal components.
    pub energy_density: f64,
    pub notice: Option<Notice>,
}

/// Electric energy-density amplitudes sampled on a grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMap {
    pub t: f64,
    pub coordinates: GridCoordinates,
    pub points: Vec<FieldPoint>,
}

impl FieldMap {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn notices(&self) -> impl Iterator<Item = &Notice> {
        self.points.iter().filter_map(|p| p.notice.as_ref())
    }
}

/// Free-space field map over the `(r, theta)` grid, row-major in `r`.
pub fn field_map(atom: &TwoLevelAtom, radii: &[f64], angles: &[f64], t: f64) -> Result<FieldMap> {
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(invalid("radii", "radii must be > 0"));
    }
    let mut points = Vec::with_capacity(radii.len() * angles.len());
    for &r in radii {
        let notice = radiation_zone_notice(atom, r);
        for &theta in angles {
            let e = electric_amplitude(atom, r, theta, t).value;
            points.push(FieldPoint {
                coords: (r, theta),
                components: [e, Complex64::default()],
                energy_density: e.norm_sqr(),
                notice: notice.clone(),
            });
        }
    }
    Ok(FieldMap {
        t,
        coordinates: GridCoordinates::Spherical,
        points,
    })
}

/// Discretised set of field modes coupled to the atom, with detunings
/// `omega_k - omega_eg` and real couplings `g_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBand {
    detunings: Vec<f64>,
    couplings: Vec<f64>,
}

impl ModeBand {
    pub fn new(detunings: Vec<f64>, couplings: Vec<f64>) -> Result<Self> {
        if detunings.len() != couplings.len() {
            return Err(invalid("couplings", "one coupling per mode required"));
        }
        if detunings.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("detunings", "must be strictly increasing"));
        }
        Ok(Self {
            detunings,
            couplings,
        })
    }

    /// Equidistant band of total width `width` and spacing `spacing`,
    /// centred on resonance, with flat couplings `2 pi g^2 / spacing = gamma`.
    pub fn flat(gamma: f64, width: f64, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) || !(width >= spacing) {
            return Err(invalid(
                "spacing",
                format!("need 0 < spacing <= width, got {spacing}, {width}"),
            ));
        }
        let half = (0.5 * width / spacing + 1e-9).floor() as i64;
        let g = (gamma * spacing / (2.0 * PI)).sqrt();
        let detunings: Vec<f64> = (-half..=half).map(|k| k as f64 * spacing).collect();
        let couplings = vec![g; detunings.len()];
        Ok(Self {
            detunings,
            couplings,
        })
    }

    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    pub fn detunings(&self) -> &[f64] {
        &self.detunings
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn width(&self) -> f64 {
        match (self.detunings.first(), self.detunings.last()) {
            (Some(a), Some(b)) => b - a + self.spacing(),
            _ => 0.0,
        }
    }

    /// Largest gap between neighbouring modes.
    pub fn spacing(&self) -> f64 {
        self.detunings
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Poincare recurrence time `2 pi / spacing` of an equidistant ladder.
    pub fn recurrence_time(&self) -> f64 {
        let s = self.spacing();
        if s > 0.0 {
            2.0 * PI / s
        } else {
            f64::INFINITY
        }
    }
}

/// Propagates atom plus band from `|e, 0>` in the frame rotating at
/// `omega_eg`. `max_step` defaults to half the inverse of the fastest
/// frequency. When `record_modes` is false only the total mode population is
/// kept.
pub fn evolve_band(
    band: &ModeBand,
    times: &[f64],
    record_modes: bool,
    max_step: Option<f64>,
) -> Result<AmplitudeTrace> {
    let n = band.len();
    let mut y0 = vec![Complex64::default(); n + 1];
    y0[0] = Complex64::new(1.0, 0.0);
    let step = max_step.unwrap_or_else(|| default_star_step(band.detunings(), band.couplings()));
    let mut trace = AmplitudeTrace {
        times: times.to_vec(),
        excited: Vec::with_capacity(times.len()),
        ground: Vec::with_capacity(times.len()),
        ground_population: Vec::with_capacity(times.len()),
    };
    evolve_star(
        band.detunings(),
        band.couplings(),
        &y0,
        times,
        step,
        |_, _, y| {
            trace.excited.push(vec![y[0]]);
            trace
                .ground_population
                .push(y[1..].iter().map(|c| c.norm_sqr()).sum());
            trace.ground.push(if record_modes {
                y[1..].to_vec()
            } else {
                Vec::new()
            });
        },
    )?;
    Ok(trace)
}

/// Brute-force Wigner-Weisskopf integration over a discretised band.
///
/// Requires a band at least `20 Gamma` wide with spacing at most
/// `Gamma / 20`, and a last sample before the recurrence time.
pub fn wigner_weisskopf_ode(
    atom: &TwoLevelAtom,
    band: &ModeBand,
    times: &[f64],
) -> Result<AmplitudeTrace> {
    let gamma = atom.decay_rate();
    if gamma > 0.0 {
        if band.width() < 20.0 * gamma * (1.0 - 1e-9) {
            return Err(invalid(
                "band",
                format!("width {} below 20 Gamma", band.width()),
            ));
        }
        if band.spacing() > gamma / 20.0 * (1.0 + 1e-9) {
            return Err(invalid(
                "band",
                format!("spacing {} above Gamma/20", band.spacing()),
            ));
        }
    }
    if let Some(&t_end) = times.last() {
        let recurrence = band.recurrence_time();
        if t_end >= recurrence {
            return Err(Error::RecurrenceGuard { t_end, recurrence });
        }
    }
    evolve_band(band, times, false, None)
}

/// Least-squares slope of `-ln P(t)`.
pub fn fitted_decay_rate(times: &[f64], populations: &[f64]) -> Result<f64> {
    if times.len() != populations.len() || times.len() < 2 {
        return Err(invalid("samples", "need at least two matching samples"));
    }
    if populations.iter().any(|p| !(*p > 0.0)) {
        return Err(invalid(
            "populations",
            "must be positive to take logarithms",
        ));
    }
    let n = times.len() as f64;
    let mean_t = times.iter().sum::<f64>() / n;
    let logs: Vec<f64> = populations.iter().map(|p| p.ln()).collect();
    let mean_l = logs.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, l) in times.iter().zip(&logs) {
        sxy += (t - mean_t) * (l - mean_l);
        sxx += (t - mean_t).powi(2);
    }
    Ok(-sxy / sxx)
}
