//! Atom at the centre of a perfectly conducting sphere.
//!
//! Only the `L = 1, M = 0` TM modes are non-zero at the centre. For
//! `omega_eg R / c >> 1` their frequencies form the ladder
//! `omega_n = pi (n + 1) c / R` with the frequency-independent density
//! `R / (pi c)`, and the radiated photon returns to the atom after every
//! round trip `2R/c`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::free_space::{evolve_band, ModeBand, TwoLevelAtom};
use crate::notice::Notice;
use crate::numerics::damped_binomial_series;
use crate::trace::AmplitudeTrace;

/// Smallest `omega_eg R / c` for which the asymptotic ladder is used.
pub const MIN_SIZE_PARAMETER: f64 = 50.0;
/// Narrowest accepted band, in units of `Gamma`.
pub const MIN_BAND_WIDTH: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalCavity {
    radius: f64,
    atom: TwoLevelAtom,
}

impl SphericalCavity {
    pub fn new(radius: f64, atom: TwoLevelAtom) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(invalid("radius", format!("must be > 0, got {radius}")));
        }
        let size = atom.omega_eg() * radius;
        if size < MIN_SIZE_PARAMETER {
            return Err(invalid(
                "radius",
                format!("omega_eg R / c = {size} is below {MIN_SIZE_PARAMETER}"),
            ));
        }
        Ok(Self { radius, atom })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn atom(&self) -> &TwoLevelAtom {
        &self.atom
    }

    /// `dn/d omega = R / (pi c)`.
    pub fn mode_density(&self) -> f64 {
        self.radius / PI
    }

    /// `Gamma R / (pi c)`, the number of modes per decay width.
    pub fn modes_per_linewidth(&self) -> f64 {
        self.atom.decay_rate() * self.mode_density()
    }

    /// Round-trip time `2R/c`.
    pub fn round_trip(&self) -> f64 {
        2.0 * self.radius
    }

    /// Asymptotic frequency of the `n`-th (0-based) coupled mode.
    pub fn ladder_frequency(&self, n: u64) -> f64 {
        PI * (n as f64 + 1.0) / self.radius
    }
}

/// Ladder frequency closest to `omega`, useful for setting up exact
/// resonance.
pub fn nearest_ladder_frequency(radius: f64, omega: f64) -> f64 {
    let spacing = PI / radius;
    (omega / spacing).round().max(1.0) * spacing
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavityModeSet {
    frequencies: Vec<f64>,
    band: ModeBand,
    half_width: f64,
    notice: Option<Notice>,
}

impl CavityModeSet {
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn couplings(&self) -> &[f64] {
        self.band.couplings()
    }

    /// Detunings and couplings relative to the atomic frequency.
    pub fn band(&self) -> &ModeBand {
        &self.band
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Set when fewer than three modes fall in the band.
    pub fn notice(&self) -> Option<&Notice> {
        self.notice.as_ref()
    }
}

/// Ladder modes within `band_width * Gamma / 2` of `omega_eg`, each with
/// coupling `|g|^2 = Gamma c / (2R)`.
pub fn resonant_mode_set(cavity: &SphericalCavity, band_width: f64) -> Result<CavityModeSet> {
    let gamma = cavity.atom.decay_rate();
    if !(gamma > 0.0) {
        return Err(invalid(
            "atom",
            "band is measured in decay widths; Gamma must be > 0",
        ));
    }
    if !(band_width >= MIN_BAND_WIDTH) || !band_width.is_finite() {
        return Err(invalid(
            "band_width",
            format!("must be at least {MIN_BAND_WIDTH} Gamma, got {band_width}"),
        ));
    }
    let omega = cavity.atom.omega_eg();
    let half_width = 0.5 * band_width * gamma;
    let spacing = PI / cavity.radius;
    let lo = ((omega - half_width) / spacing - 1.0).ceil().max(0.0) as u64;
    let hi = ((omega + half_width) / spacing - 1.0).floor();
    let frequencies: Vec<f64> = if hi < lo as f64 {
        Vec::new()
    } else {
        (lo..=hi as u64)
            .map(|n| cavity.ladder_frequency(n))
            .collect()
    };
    let g = (gamma / (2.0 * cavity.radius)).sqrt();
    let detunings: Vec<f64> = frequencies.iter().map(|w| w - omega).collect();
    let couplings = vec![g; frequencies.len()];
    let band = ModeBand::new(detunings, couplings)?;
    let notice = (frequencies.len() < 3).then(|| {
        Notice::FewModes {
            count: frequencies.len(),
        }
        .emit()
    });
    Ok(CavityModeSet {
        frequencies,
        band,
        half_width,
        notice,
    })
}

/// Closed-form excited-state amplitude in the frame rotating at `omega_eg`:
/// the free decay plus one term per completed round trip.
pub fn excited_amplitude_closed_form(cavity: &SphericalCavity, t: f64) -> Result<Complex64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(invalid("t", format!("must be finite and >= 0, got {t}")));
    }
    let gamma = cavity.atom.decay_rate();
    let tau = cavity.round_trip();
    let omega = cavity.atom.omega_eg();
    let mut sum = Complex64::new((-0.5 * gamma * t).exp(), 0.0);
    let mut carry = Complex64::default();
    let echoes = (t / tau).floor() as usize;
    for m in 1..=echoes {
        let delay = m as f64 * tau;
        let u = gamma * (t - delay);
        let term = Complex64::from_polar(damped_binomial_series(m, u)?, omega * delay);
        let y = term - carry;
        let next = sum + y;
        carry = (next - sum) - y;
        sum = next;
    }
    Ok(sum)
}

/// `P_e(t) = |a_e(t)|^2` from the closed-form echo sum.
pub fn excited_probability_closed_form(cavity: &SphericalCavity, t: f64) -> Result<f64> {
    Ok(excited_amplitude_closed_form(cavity, t)?.norm_sqr())
}

/// Integrates the atom coupled to the discrete mode set, starting from
/// `|e, 0>`, and samples the amplitudes at `times`.
pub fn evolve_cavity_ode(modes: &CavityModeSet, times: &[f64]) -> Result<AmplitudeTrace> {
    evolve_band(&modes.band, times, false, None)
}

/// Echo times `2 M R / c` for `M = 1..=count`.
pub fn echo_times(cavity: &SphericalCavity, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(invalid("count", "at least one echo must be requested"));
    }
    Ok((1..=count)
        .map(|m| m as f64 * cavity.round_trip())
        .collect())
}
