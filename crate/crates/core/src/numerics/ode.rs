//! Dormand-Prince 5(4) integrator for complex amplitude systems with output
//! at caller-supplied sample times.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the step, useful when the right-hand side has
    /// structure (echo kinks) the error estimate could step over.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: f64::INFINITY,
            max_steps: 50_000_000,
        }
    }
}

impl OdeOptions {
    pub fn with_tolerance(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates `y' = rhs(t, y)` from `t0`, calling `observe(index, t, y)` at
/// every entry of the ascending `outputs` grid. Steps are shortened to land
/// exactly on each output time, so no interpolation is involved.
pub fn integrate<F, O>(
    mut rhs: F,
    t0: f64,
    y0: &[Complex64],
    outputs: &[f64],
    opts: &OdeOptions,
    mut observe: O,
) -> Result<OdeStats>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
    O: FnMut(usize, f64, &[Complex64]),
{
    if !(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) {
        return Err(invalid("tolerance", "ODE tolerances must be positive"));
    }
    if outputs.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("outputs", "sample times must be ascending"));
    }
    if outputs.first().is_some_and(|&t| t < t0) {
        return Err(invalid("outputs", "sample times precede the initial time"));
    }
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut stats = OdeStats::default();
    let mut k1 = vec![Complex64::default(); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut k5 = k1.clone();
    let mut k6 = k1.clone();
    let mut k7 = k1.clone();
    let mut stage = k1.clone();
    let mut y_new = k1.clone();

    rhs(t, &y, &mut k1);
    stats.evaluations += 1;
    let mut h = initial_step(&y, &k1, opts);

    for (index, &target) in outputs.iter().enumerate() {
        while t < target {
            if stats.accepted + stats.rejected >= opts.max_steps {
                return Err(Error::StepSizeUnderflow { t });
            }
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step <= 1e-14 * t.abs().max(1.0) && !last {
                return Err(Error::StepSizeUnderflow { t });
            }

            for i in 0..n {
                stage[i] = y[i] + step * A21 * k1[i];
            }
            rhs(t + C2 * step, &stage, &mut k2);
            for i in 0..n {
                stage[i] = y[i] + step * (A31 * k1[i] + A32 * k2[i]);
            }
            rhs(t + C3 * step, &stage, &mut k3);
            for i in 0..n {
                stage[i] = y[i] + step * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            }
            rhs(t + C4 * step, &stage, &mut k4);
            for i in 0..n {
                stage[i] = y[i] + step * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            }
            rhs(t + C5 * step, &stage, &mut k5);
            for i in 0..n {
                stage[i] = y[i]
                    + step * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
            }
            rhs(t + step, &stage, &mut k6);
            for i in 0..n {
                y_new[i] =
                    y[i] + step * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            }
            let t_new = if last { target } else { t + step };
            rhs(t_new, &y_new, &mut k7);
            stats.evaluations += 6;

            let mut err_sq = 0.0;
            for i in 0..n {
                let e = step
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(y_new[i].norm());
                err_sq += (e.norm() / scale).powi(2);
            }
            let err = (err_sq / n.max(1) as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::StepSizeUnderflow { t });
            }

            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = t_new;
                std::mem::swap(&mut y, &mut y_new);
                std::mem::swap(&mut k1, &mut k7);
                stats.accepted += 1;
                // keep h when the step was only clipped by an output time
                if !last || step >= h {
                    h = (step * factor).min(opts.max_step);
                }
            } else {
                stats.rejected += 1;
                h = (step * factor.min(1.0)).min(opts.max_step);
            }
        }
        observe(index, t, &y);
    }
    Ok(stats)
}

fn initial_step(y: &[Complex64], dy: &[Complex64], opts: &OdeOptions) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for (a, b) in y.iter().zip(dy) {
        let scale = opts.abs_tol + opts.rel_tol * a.norm();
        d0 += (a.norm() / scale).powi(2);
        d1 += (b.norm() / scale).powi(2);
    }
    let h = if d0 < 1e-10 || d1 < 1e-10 {
        1e-6
    } else {
        0.01 * (d0 / d1).sqrt()
    };
    h.min(opts.max_step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_rotation() {
        // y' = -i w y  =>  y = exp(-i w t)
        let w = 3.0;
        let outs: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        let opts = OdeOptions::with_tolerance(1e-12, 1e-14);
        let mut worst: f64 = 0.0;
        integrate(
            |_, y, dy| dy[0] = Complex64::new(0.0, -w) * y[0],
            0.0,
            &[Complex64::new(1.0, 0.0)],
            &outs,
            &opts,
            |_, t, y| {
                let exact = Complex64::from_polar(1.0, -w * t);
                worst = worst.max((y[0] - exact).norm());
            },
        )
        .unwrap();
        assert!(worst < 1e-10, "worst = {worst:e}");
    }

    #[test]
    fn observes_every_output_in_order() {
        let outs = [0.0, 0.1, 0.1, 0.7, 2.0];
        let mut seen = Vec::new();
        integrate(
            |_, y, dy| dy[0] = -y[0],
            0.0,
            &[Complex64::new(1.0, 0.0)],
            &outs,
            &OdeOptions::default(),
            |i, t, _| seen.push((i, t)),
        )
        .unwrap();
        let expect: Vec<(usize, f64)> = outs.iter().copied().enumerate().collect();
        assert_eq!(seen, expect);
    }

    #[test]
    fn rejects_descending_grid() {
        let res = integrate(
            |_, _, _| {},
            0.0,
            &[Complex64::new(1.0, 0.0)],
            &[1.0, 0.5],
            &OdeOptions::default(),
            |_, _, _| {},
        );
        assert!(res.is_err());
    }
}
