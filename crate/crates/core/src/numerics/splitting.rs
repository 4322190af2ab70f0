//! Exactly unitary propagation of a "star" Hamiltonian: one hub level
//! coupled with real strengths `g_k` to satellites of energy `d_k`,
//! `H = sum_k d_k |k><k| + sum_k g_k (|0><k| + |k><0|)`.
//!
//! Each step composes the diagonal phase flow with the coupling flow, which
//! is a rotation in the plane of the hub and the normalised coupling vector.
//! Three Strang steps with Yoshida weights give fourth-order accuracy while
//! preserving the norm to round-off.

use num_complex::Complex64;

use crate::error::{invalid, Result};

const CBRT2: f64 = 1.259_921_049_894_873_2;
const W1: f64 = 1.0 / (2.0 - CBRT2);
const W0: f64 = -CBRT2 / (2.0 - CBRT2);

struct Star<'a> {
    detunings: &'a [f64],
    unit: Vec<f64>,
    strength: f64,
}

impl Star<'_> {
    fn phase_table(&self, dt: f64) -> Vec<Complex64> {
        self.detunings
            .iter()
            .map(|d| Complex64::from_polar(1.0, -d * dt))
            .collect()
    }

    fn rotate(&self, y: &mut [Complex64], dt: f64) {
        if self.strength == 0.0 {
            return;
        }
        let b: Complex64 = y[1..].iter().zip(&self.unit).map(|(c, u)| c * u).sum();
        let (s, c) = (self.strength * dt).sin_cos();
        let i = Complex64::i();
        let hub = y[0];
        y[0] = c * hub - i * s * b;
        let shift = (c - 1.0) * b - i * s * hub;
        for (m, u) in y[1..].iter_mut().zip(&self.unit) {
            *m += shift * u;
        }
    }
}

fn apply(y: &mut [Complex64], table: &[Complex64]) {
    for (c, p) in y[1..].iter_mut().zip(table) {
        *c *= p;
    }
}

/// Phase tables for one fourth-order step of length `dt`. The three Strang
/// steps are fused so that adjacent half-step phases are applied once.
struct Tables {
    outer: Vec<Complex64>,
    inner: Vec<Complex64>,
}

impl Tables {
    fn new(star: &Star<'_>, dt: f64) -> Self {
        Self {
            outer: star.phase_table(0.5 * W1 * dt),
            inner: star.phase_table(0.5 * (W1 + W0) * dt),
        }
    }
}

fn step(star: &Star<'_>, tables: &Tables, y: &mut [Complex64], dt: f64) {
    apply(y, &tables.outer);
    star.rotate(y, W1 * dt);
    apply(y, &tables.inner);
    star.rotate(y, W0 * dt);
    apply(y, &tables.inner);
    star.rotate(y, W1 * dt);
    apply(y, &tables.outer);
}

/// Propagates `i y' = H y` from `t = 0`, calling `observe(index, t, y)` at
/// each ascending output time. Every interval between outputs is split into
/// equal steps no longer than `max_step`. Returns the number of steps.
pub fn evolve_star<O>(
    detunings: &[f64],
    couplings: &[f64],
    y0: &[Complex64],
    outputs: &[f64],
    max_step: f64,
    mut observe: O,
) -> Result<usize>
where
    O: FnMut(usize, f64, &[Complex64]),
{
    if detunings.len() != couplings.len() || y0.len() != detunings.len() + 1 {
        return Err(invalid(
            "y0",
            "need one hub amplitude plus one per satellite",
        ));
    }
    if !(max_step > 0.0) {
        return Err(invalid("max_step", format!("must be > 0, got {max_step}")));
    }
    if outputs.windows(2).any(|w| w[1] < w[0]) || outputs.first().is_some_and(|&t| t < 0.0) {
        return Err(invalid(
            "outputs",
            "sample times must be ascending and >= 0",
        ));
    }
    let strength = couplings.iter().map(|g| g * g).sum::<f64>().sqrt();
    let unit = if strength > 0.0 {
        couplings.iter().map(|g| g / strength).collect()
    } else {
        vec![0.0; couplings.len()]
    };
    let star = Star {
        detunings,
        unit,
        strength,
    };
    let mut y = y0.to_vec();
    let mut t = 0.0;
    let mut steps = 0;
    for (index, &target) in outputs.iter().enumerate() {
        let span = target - t;
        if span > 0.0 {
            let n = (span / max_step).ceil() as usize;
            let dt = span / n as f64;
            let tables = Tables::new(&star, dt);
            for _ in 0..n {
                step(&star, &tables, &mut y, dt);
            }
            steps += n;
            t = target;
        }
        observe(index, t, &y);
    }
    Ok(steps)
}

/// Default step for [`evolve_star`]: a fixed fraction of the inverse of the
/// fastest frequency in the problem.
pub fn default_star_step(detunings: &[f64], couplings: &[f64]) -> f64 {
    let fastest = detunings.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let strength = couplings.iter().map(|g| g * g).sum::<f64>().sqrt();
    0.5 / fastest.max(strength).max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ode::{integrate, OdeOptions};

    fn rk_reference(det: &[f64], cpl: &[f64], times: &[f64]) -> Vec<Vec<Complex64>> {
        let n = det.len();
        let mut y0 = vec![Complex64::default(); n + 1];
        y0[0] = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        let mut out = Vec::new();
        integrate(
            |_, y, dy| {
                let mut hub = Complex64::default();
                for k in 0..n {
                    hub += cpl[k] * y[k + 1];
                    dy[k + 1] = -i * (det[k] * y[k + 1] + cpl[k] * y[0]);
                }
                dy[0] = -i * hub;
            },
            0.0,
            &y0,
            times,
            &OdeOptions::with_tolerance(1e-13, 1e-15),
            |_, _, y| out.push(y.to_vec()),
        )
        .unwrap();
        out
    }

    #[test]
    fn matches_runge_kutta_on_small_star() {
        let det = [-3.0, -1.0, 0.5, 2.0, 4.0];
        let cpl = [0.3, 0.7, 1.1, 0.4, 0.2];
        let times = [0.5, 1.0, 4.0, 10.0];
        let reference = rk_reference(&det, &cpl, &times);
        let mut y0 = vec![Complex64::default(); 6];
        y0[0] = Complex64::new(1.0, 0.0);
        let mut got = Vec::new();
        evolve_star(&det, &cpl, &y0, &times, 2e-3, |_, _, y| {
            got.push(y.to_vec())
        })
        .unwrap();
        for (a, b) in got.iter().zip(&reference) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).norm() < 1e-9, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let det = [-2.0, 0.0, 1.5];
        let cpl = [0.8, 0.5, 1.0];
        let reference = rk_reference(&det, &cpl, &[3.0]);
        let mut y0 = vec![Complex64::default(); 4];
        y0[0] = Complex64::new(1.0, 0.0);
        let err = |h: f64| {
            let mut last = Vec::new();
            evolve_star(&det, &cpl, &y0, &[3.0], h, |_, _, y| last = y.to_vec()).unwrap();
            (last[0] - reference[0][0]).norm()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 12.0 && ratio < 20.0, "{ratio}");
    }

    #[test]
    fn norm_preserved_to_round_off() {
        let det: Vec<f64> = (0..200).map(|k| (k as f64 - 100.0) * 0.37).collect();
        let cpl = vec![0.2; 200];
        let mut y0 = vec![Complex64::default(); 201];
        y0[0] = Complex64::new(1.0, 0.0);
        let times: Vec<f64> = (1..=20).map(|i| i as f64 * 5.0).collect();
        evolve_star(&det, &cpl, &y0, &times, 0.05, |_, _, y| {
            let norm: f64 = y.iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        })
        .unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let y0 = [Complex64::new(1.0, 0.0), Complex64::default()];
        assert!(evolve_star(&[0.0], &[1.0], &y0, &[1.0], 0.0, |_, _, _| {}).is_err());
        assert!(evolve_star(&[0.0], &[1.0], &y0, &[2.0, 1.0], 0.1, |_, _, _| {}).is_err());
        assert!(evolve_star(&[0.0, 1.0], &[1.0], &y0, &[1.0], 0.1, |_, _, _| {}).is_err());
    }
}
