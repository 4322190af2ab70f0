//! Single-mode (Jaynes-Cummings-Paul) dynamics of an initially excited atom.
//!
//! The Hamiltonian couples the pairs `(|e, n>, |g, n+1>)` only, so every
//! photon number evolves independently. Amplitudes are in the interaction
//! picture of the uncoupled system.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::numerics::ode::{self, OdeOptions};
use crate::trace::AmplitudeTrace;

/// Neglected Fock weight allowed when truncating a distribution.
pub const TRUNCATION_BOUND: f64 = 1e-12;

/// Photon-number state of the mode at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialField {
    Vacuum,
    Coherent {
        alpha: Complex64,
    },
    Fock(usize),
    /// Diagonal photon-number weights `p_n`, indexed by `n`.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JcpParams {
    coupling: f64,
    coupling_phase: f64,
    detuning: f64,
    field: InitialField,
}

impl JcpParams {
    pub fn new(coupling: f64, detuning: f64, field: InitialField) -> Result<Self> {
        if !(coupling > 0.0) || !coupling.is_finite() {
            return Err(invalid(
                "coupling",
                format!("|g| must be > 0, got {coupling}"),
            ));
        }
        if !detuning.is_finite() {
            return Err(invalid("detuning", "must be finite"));
        }
        if let InitialField::Custom(weights) = &field {
            if weights.is_empty() || weights.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
                return Err(invalid(
                    "field",
                    "custom weights must be finite and non-negative",
                ));
            }
            let total: f64 = weights.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(invalid(
                    "field",
                    format!("custom weights sum to {total}, not 1"),
                ));
            }
        }
        if let InitialField::Coherent { alpha } = &field {
            if !alpha.re.is_finite() || !alpha.im.is_finite() {
                return Err(invalid("field", "coherent amplitude must be finite"));
            }
        }
        Ok(Self {
            coupling,
            coupling_phase: 0.0,
            detuning,
            field,
        })
    }

    /// Resonant coupling to a coherent state with mean photon number `mean`.
    pub fn coherent(coupling: f64, detuning: f64, mean: f64) -> Result<Self> {
        if !(mean >= 0.0) || !mean.is_finite() {
            return Err(invalid("mean_photons", format!("must be >= 0, got {mean}")));
        }
        Self::new(
            coupling,
            detuning,
            InitialField::Coherent {
                alpha: Complex64::new(mean.sqrt(), 0.0),
            },
        )
    }

    pub fn with_coupling_phase(mut self, phase: f64) -> Self {
        self.coupling_phase = phase;
        self
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn coupling_phase(&self) -> f64 {
        self.coupling_phase
    }

    /// Complex coupling constant `g`.
    pub fn g(&self) -> Complex64 {
        Complex64::from_polar(self.coupling, self.coupling_phase)
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn field(&self) -> &InitialField {
        &self.field
    }

    pub fn mean_photons(&self) -> f64 {
        match &self.field {
            InitialField::Vacuum => 0.0,
            InitialField::Coherent { alpha } => alpha.norm_sqr(),
            InitialField::Fock(n) => *n as f64,
            InitialField::Custom(p) => p.iter().enumerate().map(|(n, w)| n as f64 * w).sum(),
        }
    }

    /// Initial amplitudes `a_{e,n}(0)` for `n = 0..=n_max`, with `n_max`
    /// chosen so the neglected weight is below [`TRUNCATION_BOUND`].
    pub fn initial_amplitudes(&self) -> Result<Vec<Complex64>> {
        match &self.field {
            InitialField::Vacuum => Ok(vec![Complex64::new(1.0, 0.0)]),
            InitialField::Fock(n) => {
                let mut amps = vec![Complex64::default(); n + 1];
                amps[*n] = Complex64::new(1.0, 0.0);
                Ok(amps)
            }
            InitialField::Custom(p) => {
                Ok(p.iter().map(|w| Complex64::new(w.sqrt(), 0.0)).collect())
            }
            InitialField::Coherent { alpha } => coherent_amplitudes(*alpha),
        }
    }
}

/// `n_max = ceil(<n> + 10 sqrt(<n>) + 20)`, widened in steps of ten until
/// the Poisson tail bound `p_{n+1} / (1 - <n>/(n+2))` drops below the
/// truncation bound.
pub fn fock_cutoff(mean: f64) -> Result<usize> {
    let mut n_max = (mean + 10.0 * mean.sqrt() + 20.0).ceil() as usize;
    for _ in 0..1000 {
        let tail = poisson_tail_bound(mean, n_max);
        if tail <= TRUNCATION_BOUND {
            return Ok(n_max);
        }
        n_max += 10;
    }
    Err(Error::Truncation {
        tail: poisson_tail_bound(mean, n_max),
        bound: TRUNCATION_BOUND,
    })
}

fn ln_poisson(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    -mean + n as f64 * mean.ln() - ln_fact
}

fn poisson_tail_bound(mean: f64, n_max: usize) -> f64 {
    let ratio = mean / (n_max as f64 + 2.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    ln_poisson(mean, n_max + 1).exp() / (1.0 - ratio)
}

fn coherent_amplitudes(alpha: Complex64) -> Result<Vec<Complex64>> {
    let mean = alpha.norm_sqr();
    let n_max = fock_cutoff(mean)?;
    let phase = alpha.arg();
    let mut amps = Vec::with_capacity(n_max + 1);
    let mut ln_p = -mean;
    for n in 0..=n_max {
        if n > 0 {
            ln_p += mean.ln() - (n as f64).ln();
        }
        let magnitude = if mean == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            (0.5 * ln_p).exp()
        };
        amps.push(Complex64::from_polar(magnitude, n as f64 * phase));
    }
    Ok(amps)
}

/// `Omega_n = sqrt(Delta^2 + 4 |g|^2 (n + 1))`.
pub fn rabi_frequency(n: usize, params: &JcpParams) -> f64 {
    let g = params.coupling;
    (params.detuning.powi(2) + 4.0 * g * g * (n as f64 + 1.0)).sqrt()
}

/// Closed-form `(a_{e,n}(t), a_{g,n+1}(t))` for a pair starting at
/// `(a_{e,n}(0), 0)`.
pub fn pair_closed_form(
    g: Complex64,
    detuning: f64,
    n: usize,
    a0: Complex64,
    t: f64,
) -> (Complex64, Complex64) {
    let root = (n as f64 + 1.0).sqrt();
    let omega = (detuning.powi(2) + 4.0 * g.norm_sqr() * (n as f64 + 1.0)).sqrt();
    if omega == 0.0 {
        return (a0, Complex64::default());
    }
    let (s, c) = (0.5 * omega * t).sin_cos();
    let i = Complex64::i();
    let excited =
        a0 * (c - i * (detuning / omega) * s) * Complex64::from_polar(1.0, 0.5 * detuning * t);
    let ground = -a0
        * (2.0 * i * g.conj() * root / omega)
        * s
        * Complex64::from_polar(1.0, -0.5 * detuning * t);
    (excited, ground)
}

/// Closed-form amplitudes for photon number `n` at time `t`.
pub fn amplitudes_closed_form(
    params: &JcpParams,
    n: usize,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    let amps = params.initial_amplitudes()?;
    let a0 = amps.get(n).copied().unwrap_or_default();
    Ok(pair_closed_form(params.g(), params.detuning, n, a0, t))
}

/// Atomic inversion `w(t)` sampled on a caller-supplied grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionTrace {
    pub times: Vec<f64>,
    pub inversion: Vec<f64>,
}

/// Inversion from the closed-form photon-number sum, accumulated in
/// ascending `n` at every sample.
pub fn inversion(params: &JcpParams, times: &[f64]) -> Result<InversionTrace> {
    let weights: Vec<f64> = params
        .initial_amplitudes()?
        .iter()
        .map(|a| a.norm_sqr())
        .collect();
    let g2 = params.coupling.powi(2);
    let d2 = params.detuning.powi(2);
    let terms: Vec<(f64, f64, f64)> = weights
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(n, &p)| {
            let omega = rabi_frequency(n, params);
            let om2 = omega * omega;
            (p, omega, 4.0 * g2 * (n as f64 + 1.0) / om2)
        })
        .collect();
    let inversion = times
        .iter()
        .map(|&t| {
            terms
                .iter()
                .map(|&(p, omega, amp)| p * (d2 / (omega * omega) + amp * (omega * t).cos()))
                .sum::<f64>()
        })
        .collect();
    Ok(InversionTrace {
        times: times.to_vec(),
        inversion,
    })
}

fn ode_options() -> OdeOptions {
    OdeOptions::with_tolerance(1e-12, 1e-14)
}

/// Integrates one pair of the coupled amplitude equations from
/// `(a0, 0)` at `t = 0`, returning `(a_{e,n}, a_{g,n+1})` at each sample.
pub fn evolve_pair(
    g: Complex64,
    detuning: f64,
    n: usize,
    a0: Complex64,
    times: &[f64],
) -> Result<Vec<(Complex64, Complex64)>> {
    let root = (n as f64 + 1.0).sqrt();
    let i = Complex64::i();
    let mut out = Vec::with_capacity(times.len());
    // the system is linear: integrate from unit amplitude and rescale
    ode::integrate(
        |t, y, dy| {
            let rot = Complex64::from_polar(1.0, detuning * t);
            dy[0] = -i * g * root * rot * y[1];
            dy[1] = -i * g.conj() * root * rot.conj() * y[0];
        },
        0.0,
        &[Complex64::new(1.0, 0.0), Complex64::default()],
        times,
        &ode_options(),
        |_, _, y| out.push((a0 * y[0], a0 * y[1])),
    )?;
    Ok(out)
}

/// Brute-force integration of every photon-number pair. Row `i` of the
/// trace holds `a_{e,n}(t_i)` and `a_{g,n+1}(t_i)` for `n = 0..=n_max`.
pub fn evolve_ode(params: &JcpParams, times: &[f64]) -> Result<AmplitudeTrace> {
    if times.iter().any(|t| !(*t >= 0.0)) {
        return Err(invalid("times", "sample times must be >= 0"));
    }
    let amps = params.initial_amplitudes()?;
    let g = params.g();
    let pairs: Vec<Vec<(Complex64, Complex64)>> = amps
        .par_iter()
        .enumerate()
        .map(|(n, &a0)| evolve_pair(g, params.detuning, n, a0, times))
        .collect::<Result<_>>()?;
    let mut trace = AmplitudeTrace {
        times: times.to_vec(),
        excited: Vec::with_capacity(times.len()),
        ground: Vec::with_capacity(times.len()),
        ground_population: Vec::with_capacity(times.len()),
    };
    for k in 0..times.len() {
        let excited: Vec<Complex64> = pairs.iter().map(|p| p[k].0).collect();
        let ground: Vec<Complex64> = pairs.iter().map(|p| p[k].1).collect();
        trace
            .ground_population
            .push(ground.iter().map(|a| a.norm_sqr()).sum());
        trace.excited.push(excited);
        trace.ground.push(ground);
    }
    Ok(trace)
}

/// Order-of-magnitude collapse and revival times `(2 pi/|g|, 2 pi sqrt(<n>+1)/|g|)`
/// for a coherent initial field.
pub fn collapse_revival_times(params: &JcpParams) -> Result<(f64, f64)> {
    match params.field {
        InitialField::Coherent { alpha } => {
            let g = params.coupling;
            Ok((2.0 * PI / g, 2.0 * PI * (alpha.norm_sqr() + 1.0).sqrt() / g))
        }
        _ => Err(invalid(
            "field",
            "collapse and revival times need a coherent field",
        )),
    }
}
