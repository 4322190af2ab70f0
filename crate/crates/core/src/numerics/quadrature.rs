//! Adaptive Gauss-Kronrod (7/15) quadrature with a global error heap; the
//! 2-D rule integrates an adaptive inner integral over an adaptive outer one.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{invalid, Error, Result};

/// Tolerances and work limit for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(invalid("rel_tol", format!("must be > 0, got {rel_tol}")));
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(invalid("abs_tol", format!("must be > 0, got {abs_tol}")));
        }
        if max_subdivisions == 0 {
            return Err(invalid("max_subdivisions", "must be at least 1"));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes, centre last
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = kronrod.abs();
    let mut samples = [0.0; 15];
    samples[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        samples[j] = f1;
        samples[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((samples[j] - mean).abs() + (samples[14 - j] - mean).abs());
    }
    let value = kronrod * half;
    let resabs = abs_sum * half.abs();
    let resasc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Panel { a, b, value, error }
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_1d_panels(f, &[a, b], spec)
}

/// Adaptive integral over consecutive panels `breaks[0]..breaks[1]..`.
///
/// Initial panels let oscillatory integrands start from a partition that
/// already resolves the oscillation; the subdivision budget is counted on
/// top of the initial panels.
pub fn integrate_1d_panels<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if breaks.len() < 2 {
        return Err(invalid("breaks", "need at least two points"));
    }
    if breaks.iter().any(|x| !x.is_finite()) {
        return Err(invalid("breaks", "interval end points must be finite"));
    }
    if breaks.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            intervals: 0,
        });
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len() + spec.max_subdivisions);
    for w in breaks.windows(2) {
        if w[0] != w[1] {
            heap.push(gauss_kronrod(&f, w[0], w[1]));
        }
    }
    let initial = heap.len();
    let mut evaluations = 15 * initial;
    let limit = initial + spec.max_subdivisions;
    loop {
        let (value, error) = totals(&heap);
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                evaluations,
                intervals: heap.len(),
            });
        }
        if heap.len() >= limit {
            return Err(Error::NonConvergence {
                estimate: value,
                error,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // cannot split further in floating point
            heap.push(worst);
            let (value, error) = totals(&heap);
            return Err(Error::NonConvergence {
                estimate: value,
                error,
            });
        }
        heap.push(gauss_kronrod(&f, worst.a, mid));
        heap.push(gauss_kronrod(&f, mid, worst.b));
        evaluations += 30;
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    // sorted by position so the sum does not depend on heap layout
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error = 0.0;
    for p in panels {
        let y = p.value - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
        error += p.error;
    }
    (value, error)
}

/// Iterated adaptive integral of `f(x, y)` over `[x0, x1] x [y0, y1]`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_2d_panels(f, &[x_range.0, x_range.1], &[y_range.0, y_range.1], spec)
}

/// Iterated 2-D integral with initial panels in both directions.
pub fn integrate_2d_panels<F: Fn(f64, f64) -> f64>(
    f: F,
    x_breaks: &[f64],
    y_breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if y_breaks.len() < 2 {
        return Err(invalid("y_breaks", "need at least two points"));
    }
    let x_span = (x_breaks[x_breaks.len() - 1] - x_breaks[0]).abs();
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1 / x_span.max(f64::MIN_POSITIVE),
        max_subdivisions: spec.max_subdivisions,
    };
    let inner_error = Cell::new(0.0_f64);
    let inner_evals = Cell::new(0_usize);
    let failure: Cell<Option<(f64, f64)>> = Cell::new(None);
    let outer = integrate_1d_panels(
        |x| {
            // Once an inner integral has failed the result is lost; stop doing work.
            if failure.get().is_some() {
                return 0.0;
            }
            match integrate_1d_panels(|y| f(x, y), y_breaks, &inner_spec) {
                Ok(est) => {
                    inner_error.set(inner_error.get().max(est.error));
                    inner_evals.set(inner_evals.get() + est.evaluations);
                    est.value
                }
                Err(Error::NonConvergence { estimate, error }) => {
                    failure.set(Some((estimate, error)));
                    inner_error.set(inner_error.get().max(error));
                    estimate
                }
                Err(_) => f64::NAN,
            }
        },
        x_breaks,
        spec,
    );
    let carried = inner_error.get() * x_span;
    match outer {
        Ok(est) => {
            let error = est.error + carried;
            if failure.get().is_some() {
                return Err(Error::NonConvergence {
                    estimate: est.value,
                    error,
                });
            }
            if !est.value.is_finite() {
                return Err(invalid("integrand", "non-finite values encountered"));
            }
            Ok(Estimate {
                value: est.value,
                error,
                evaluations: inner_evals.get(),
                intervals: est.intervals,
            })
        }
        Err(Error::NonConvergence { estimate, error }) => Err(Error::NonConvergence {
            estimate,
            error: error + carried,
        }),
        Err(e) => Err(e),
    }
}
