use crate::error::{invalid, Error, Result};

/// `S_M(u) = sum_{r=0}^{M-1} C(M-1, r) (-u)^{1+r} / (1+r)!`, the bracketed
/// echo sum of the spherical-cavity amplitude.
///
/// The sum equals the generalised Laguerre polynomial `L_M^{(-1)}(u)`, so it
/// is evaluated with the three-term recurrence instead of the alternating
/// power sum, whose terms cancel by tens of orders of magnitude at large `u`.
pub fn stable_binomial_series(m: usize, u: f64) -> Result<f64> {
    let (mantissa, log_scale) = scaled_laguerre(m, u)?;
    finish(mantissa, log_scale)
}

/// `exp(-u/2) * S_M(u)`, the combination entering the echo amplitude, with
/// the exponential folded into the log-scale so neither factor overflows.
pub fn damped_binomial_series(m: usize, u: f64) -> Result<f64> {
    let (mantissa, log_scale) = scaled_laguerre(m, u)?;
    finish(mantissa, log_scale - 0.5 * u)
}

fn finish(mantissa: f64, log_scale: f64) -> Result<f64> {
    if mantissa == 0.0 {
        return Ok(0.0);
    }
    let log_mag = mantissa.abs().ln() + log_scale;
    if log_mag > f64::MAX.ln() {
        return Err(Error::Overflow(format!("|S| ~ exp({log_mag:.1})")));
    }
    Ok(mantissa * log_scale.exp())
}

const BIG: f64 = 1e150;

fn scaled_laguerre(m: usize, u: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(invalid("m", "echo index must be at least 1"));
    }
    if !(u >= 0.0) || !u.is_finite() {
        return Err(invalid("u", format!("must be finite and >= 0, got {u}")));
    }
    // (n+1) L_{n+1} = (2n - u) L_n - (n-1) L_{n-1},  L_0 = 1, L_1 = -u
    let mut prev = 1.0;
    let mut cur = -u;
    let mut log_scale = 0.0;
    for n in 1..m {
        let nf = n as f64;
        let next = ((2.0 * nf - u) * cur - (nf - 1.0) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > BIG || (mag > 0.0 && mag < 1.0 / BIG) {
            let shift = mag.ln();
            let factor = (-shift).exp();
            cur *= factor;
            prev *= factor;
            log_scale += shift;
        }
        if !cur.is_finite() {
            return Err(Error::Overflow(format!("recurrence diverged at n = {n}")));
        }
    }
    Ok((cur, log_scale))
}
