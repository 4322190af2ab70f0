use crate::error::{Error, Result};

/// Largest order accepted by [`spherical_bessel_j`].
pub const MAX_BESSEL_ORDER: u32 = 50;

const SERIES_LIMIT: f64 = 1.0;
const RESCALE: f64 = 1e200;

/// Regular spherical Bessel function `j_L(x)` for `x >= 0`.
///
/// Small arguments use the power series, `x > L` the upward recurrence from
/// `j_0` and `j_1`, and the remaining band the downward (Miller) recurrence
/// normalised against whichever of `j_0`, `j_1` is larger.
pub fn spherical_bessel_j(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    Ok(eval(order, x))
}

/// `d(x j_L(x))/dx`, the quantity whose zeros give the TM-type cavity modes.
pub fn riccati_derivative(order: u32, x: f64) -> Result<f64> {
    check_args(order, x)?;
    if order == 0 {
        return Ok(x.cos());
    }
    Ok(x * eval(order - 1, x) - f64::from(order) * eval(order, x))
}

fn check_args(order: u32, x: f64) -> Result<()> {
    if order > MAX_BESSEL_ORDER {
        return Err(Error::Domain(format!(
            "order {order} exceeds supported maximum {MAX_BESSEL_ORDER}"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "argument must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

pub(crate) fn eval(order: u32, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        power_series(order, x)
    } else if x > f64::from(order) {
        upward(order, x)
    } else {
        miller(order, x)
    }
}

fn power_series(order: u32, x: f64) -> f64 {
    let l = f64::from(order);
    // x^L / (2L+1)!!
    let mut lead = 1.0;
    for i in 1..=order {
        lead *= x / (2.0 * f64::from(i) + 1.0);
    }
    let y = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = f64::from(k);
        term *= y / (kf * (2.0 * l + 2.0 * kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn j0_j1(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (s / x, s / (x * x) - c / x)
}

fn upward(order: u32, x: f64) -> f64 {
    let (j0, j1) = j0_j1(x);
    if order == 0 {
        return j0;
    }
    let (mut prev, mut cur) = (j0, j1);
    for n in 1..order {
        let next = (2.0 * f64::from(n) + 1.0) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn miller(order: u32, x: f64) -> f64 {
    let start = order + 60;
    let mut above = 0.0;
    let mut cur = 1e-300;
    let mut wanted = 0.0;
    for n in (1..=start).rev() {
        let below = (2.0 * f64::from(n) + 1.0) / x * cur - above;
        above = cur;
        cur = below;
        if n - 1 == order {
            wanted = cur;
        }
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            above /= RESCALE;
            wanted /= RESCALE;
        }
    }
    // cur ~ j_0, above ~ j_1 up to a common factor
    let (j0, j1) = j0_j1(x);
    let scale = if j0.abs() >= j1.abs() {
        j0 / cur
    } else {
        j1 / above
    };
    wanted * scale
}
