use std::f64::consts::PI;

use super::bessel::eval;
use crate::error::{invalid, Error, Result};

/// Interval known to contain a sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(invalid(
                "bracket",
                format!("need finite lo < hi, got [{lo}, {hi}]"),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

/// Boundary condition selecting the cavity mode family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    /// `j_L(x) = 0`
    TE,
    /// `d(x j_L(x))/dx = 0`
    TM,
}

const SCAN_STEP: f64 = PI / 8.0;
const BISECTION_TOL: f64 = 1e-13;

/// Bisection on a bracket until its width drops below `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: RootBracket, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(invalid(
            "bracket",
            format!("no sign change on [{lo}, {hi}]"),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn condition(order: u32, kind: ModeKind, x: f64) -> f64 {
    match kind {
        ModeKind::TE => eval(order, x),
        ModeKind::TM if order == 0 => x.cos(),
        ModeKind::TM => x * eval(order - 1, x) - f64::from(order) * eval(order, x),
    }
}

fn condition_slope(order: u32, kind: ModeKind, x: f64) -> f64 {
    let l = f64::from(order);
    match kind {
        // j_L' = j_{L-1} - (L+1)/x j_L, with j_0' = -j_1
        ModeKind::TE if order == 0 => -eval(1, x),
        ModeKind::TE => eval(order - 1, x) - (l + 1.0) / x * eval(order, x),
        // (x j_L)'' = (L(L+1)/x^2 - 1) x j_L
        ModeKind::TM => (l * (l + 1.0) / (x * x) - 1.0) * x * eval(order, x),
    }
}

/// First `count` positive eigenfrequencies `omega = x c / R` of a metallic
/// sphere for angular order `order`.
///
/// Roots in `x = omega R / c` are isolated by a uniform scan at step pi/8,
/// bisected to 1e-13 and given one Newton polish that must stay inside the
/// bracket.
pub fn find_bessel_eigenvalues(
    order: u32,
    r_over_c: f64,
    count: usize,
    kind: ModeKind,
) -> Result<Vec<f64>> {
    if order > super::MAX_BESSEL_ORDER {
        return Err(Error::Domain(format!("order {order} unsupported")));
    }
    if count == 0 {
        return Err(invalid("count", "need at least one root"));
    }
    if !(r_over_c > 0.0) || !r_over_c.is_finite() {
        return Err(invalid(
            "r_over_c",
            format!("must be positive, got {r_over_c}"),
        ));
    }
    let f = |x: f64| condition(order, kind, x);
    // asymptotically one root per pi; generous ceiling for the first few
    let x_max = (count as f64 + f64::from(order) + 4.0) * PI + 50.0;
    let mut roots = Vec::with_capacity(count);
    let mut a = SCAN_STEP;
    let mut fa = f(a);
    while roots.len() < count {
        if a > x_max {
            return Err(Error::BracketFailure {
                index: roots.len(),
                scanned_to: a,
            });
        }
        let b = a + SCAN_STEP;
        let fb = f(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            let x = bisect(f, RootBracket::new(a, b)?, BISECTION_TOL)?;
            roots.push(polish(order, kind, x, a, b));
        }
        a = b;
        fa = fb;
    }
    Ok(roots.into_iter().map(|x| x / r_over_c).collect())
}

fn polish(order: u32, kind: ModeKind, x: f64, lo: f64, hi: f64) -> f64 {
    let slope = condition_slope(order, kind, x);
    if slope == 0.0 || !slope.is_finite() {
        return x;
    }
    let next = x - condition(order, kind, x) / slope;
    if next > lo
        && next < hi
        && condition(order, kind, next).abs() <= condition(order, kind, x).abs()
    {
        next
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_te_root_of_j0_is_pi() {
        let roots = find_bessel_eigenvalues(0, 1.0, 3, ModeKind::TE).unwrap();
        for (n, r) in roots.iter().enumerate() {
            assert!((r - PI * (n as f64 + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn first_te_root_of_j1() {
        // oracle: fine scan at step 1e-3 then bisection on the closed form of j_1
        let j1 = |x: f64| x.sin() / (x * x) - x.cos() / x;
        let mut a = 1.0;
        while j1(a).signum() == j1(a + 1e-3).signum() {
            a += 1e-3;
        }
        let oracle = bisect(j1, RootBracket::new(a, a + 1e-3).unwrap(), 1e-15).unwrap();
        let roots = find_bessel_eigenvalues(1, 1.0, 1, ModeKind::TE).unwrap();
        assert!((roots[0] - oracle).abs() < 1e-12);
        assert!((roots[0] - 4.493409).abs() < 1e-6);
    }

    #[test]
    fn tm_roots_approach_asymptotic_ladder() {
        let roots = find_bessel_eigenvalues(1, 1.0, 200, ModeKind::TM).unwrap();
        let gap = |n: usize| (roots[n] - (PI * n as f64 + PI)).abs();
        assert!(gap(199) < gap(10));
        assert!(gap(199) < 2e-3);
    }

    #[test]
    fn residuals_are_tiny_and_roots_increase() {
        for order in [0u32, 1, 2, 5, 20, 50] {
            for kind in [ModeKind::TE, ModeKind::TM] {
                let roots = find_bessel_eigenvalues(order, 1.0, 12, kind).unwrap();
                assert!(roots.windows(2).all(|w| w[0] < w[1]));
                for &x in &roots {
                    assert!(
                        condition(order, kind, x).abs() < 1e-12,
                        "L={order} {kind:?} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn scales_with_radius() {
        let unit = find_bessel_eigenvalues(1, 1.0, 4, ModeKind::TM).unwrap();
        let big = find_bessel_eigenvalues(1, 4.0, 4, ModeKind::TM).unwrap();
        for (u, b) in unit.iter().zip(&big) {
            assert!((u / 4.0 - b).abs() < 1e-14);
        }
    }

    #[test]
    fn te_and_tm_roots_interleave() {
        for order in [1u32, 2, 3, 7] {
            let te = find_bessel_eigenvalues(order, 1.0, 15, ModeKind::TE).unwrap();
            let tm = find_bessel_eigenvalues(order, 1.0, 20, ModeKind::TM).unwrap();
            for w in te.windows(2) {
                let inside = tm.iter().filter(|&&x| x > w[0] && x < w[1]).count();
                assert_eq!(inside, 1, "L={order} between {} and {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn rejects_zero_count() {
        assert!(find_bessel_eigenvalues(1, 1.0, 0, ModeKind::TE).is_err());
    }

    #[test]
    fn bracket_requires_ordering() {
        assert!(RootBracket::new(2.0, 1.0).is_err());
    }
}
