//! Adaptive Gauss–Kronrod (7/15) integration over the open unit interval.
//!
//! Segments that touch an endpoint are mapped with `p = c·e^{−s}` (or the
//! mirror image at 1) so that algebraic and logarithmic endpoint
//! singularities become exponentially decaying tails in `s`. The integrand is
//! supplied in log-weight form so that points arbitrarily close to 0 or 1 can
//! be evaluated without forming `p` itself. No rule ever samples an endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_SUBDIVISIONS_LIMIT: usize = 1 << 20;
const MIN_ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    /// Adaptive bisection with a 15-point Kronrod rule (interior nodes only).
    AdaptiveInterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    rule: QuadratureRule,
    abs_tol: f64,
    max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol.is_finite() && abs_tol >= MIN_ABS_TOL) {
            return Err(Error::InvalidInput(format!(
                "abs_tol = {abs_tol} must be finite and >= {MIN_ABS_TOL:e}"
            )));
        }
        if max_subdivisions == 0 || max_subdivisions > MAX_SUBDIVISIONS_LIMIT {
            return Err(Error::InvalidInput(format!(
                "max_subdivisions = {max_subdivisions} must lie in 1..=2^20"
            )));
        }
        Ok(Self {
            rule: QuadratureRule::AdaptiveInterior,
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
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
            rule: QuadratureRule::AdaptiveInterior,
            abs_tol: 1e-11,
            max_subdivisions: 4096,
        }
    }
}

/// A point of (0, 1) with its complement and both logarithms, each computed
/// without cancellation.
#[derive(Debug, Clone, Copy)]
pub struct UnitPoint {
    pub p: f64,
    pub q: f64,
    pub ln_p: f64,
    pub ln_q: f64,
}

impl UnitPoint {
    pub fn from_p(p: f64) -> Self {
        Self {
            p,
            q: 1.0 - p,
            ln_p: p.ln(),
            ln_q: (-p).ln_1p(),
        }
    }
}

/// Integrand value `exp(ln_weight) * factor`.
#[derive(Debug, Clone, Copy)]
pub struct Weighted {
    pub ln_weight: f64,
    pub factor: f64,
}

impl Weighted {
    pub fn new(ln_weight: f64, factor: f64) -> Self {
        Self { ln_weight, factor }
    }

    fn scaled(self, ln_jacobian: f64) -> f64 {
        if self.factor == 0.0 {
            return 0.0;
        }
        (self.ln_weight + ln_jacobian).exp() * self.factor
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error_bound: self.error_bound + rhs.error_bound,
        }
    }
}

const ZERO: Estimate = Estimate {
    value: 0.0,
    error_bound: 0.0,
};

// QUADPACK qk15 abscissae and weights. Gauss nodes are XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
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
    abs: f64,
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

/// One application of the 7/15 pair on [a, b], with QUADPACK error scaling.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let (lo, hi) = (f(center - x), f(center + x));
        f1[j] = lo;
        f2[j] = hi;
        res_k += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err, res_abs)
}

/// Globally adaptive integration of `f` over [a, b] to absolute tolerance `tol`.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_sub: usize,
) -> Result<Estimate> {
    let (value, error, res_abs) = kronrod15(f, a, b);
    let mut total = value;
    let mut total_err = error;
    let mut total_abs = res_abs;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value,
        error,
        abs: res_abs,
    });
    let mut subdivisions = 0;
    loop {
        let floor = 50.0 * f64::EPSILON * total_abs;
        if total_err <= tol.max(floor) {
            return Ok(Estimate {
                value: total,
                error_bound: total_err,
            });
        }
        if subdivisions >= max_sub {
            return Err(Error::Convergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel at the resolution of f64; its error is rounding noise.
            heap.push(Panel {
                error: 0.0,
                ..worst
            });
            total_err -= worst.error;
            continue;
        }
        let (v1, e1, r1) = kronrod15(f, worst.a, mid);
        let (v2, e2, r2) = kronrod15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        total_abs += r1 + r2 - worst.abs;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            abs: r1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            abs: r2,
        });
        subdivisions += 1;
        // Re-sum periodically to keep the running totals from drifting.
        if subdivisions % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// Which end of the unit interval an exponentially mapped segment touches.
#[derive(Debug, Clone, Copy)]
enum End {
    Zero,
    One,
}

const TAIL_PIECE_LIMIT: usize = 24;
/// No early exit before s reaches this value (p ~ c·1e-14). Integrands here
/// are unimodal in s, so small pieces ahead of a distant peak must not end
/// the sweep.
const TAIL_MIN_S: f64 = 32.0;

/// ∫ over the segment between `c` and the given endpoint, as a sum over
/// s-pieces [0, 1], [1, 2], [2, 4], ... until the pieces decay geometrically.
fn endpoint_segment<F>(f: &F, end: End, c: f64, tol: f64, max_sub: usize) -> Result<Estimate>
where
    F: Fn(&UnitPoint) -> Weighted,
{
    // Distance from the endpoint to c, and its log.
    let width = match end {
        End::Zero => c,
        End::One => 1.0 - c,
    };
    let ln_width = width.ln();
    let mapped = |s: f64| -> f64 {
        let near = width * (-s).exp();
        let ln_near = ln_width - s;
        let pt = match end {
            End::Zero => UnitPoint {
                p: near,
                q: 1.0 - near,
                ln_p: ln_near,
                ln_q: (-near).ln_1p(),
            },
            End::One => UnitPoint {
                p: 1.0 - near,
                q: near,
                ln_p: (-near).ln_1p(),
                ln_q: ln_near,
            },
        };
        // dp = near · ds
        f(&pt).scaled(ln_near)
    };

    let piece_tol = tol / 32.0;
    let mut acc = ZERO;
    let mut prev_mag = f64::INFINITY;
    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..TAIL_PIECE_LIMIT {
        let piece = adaptive(&mapped, lo, hi, piece_tol, max_sub)?;
        acc = acc + piece;
        let mag = piece.value.abs() + piece.error_bound;
        let ratio = mag / prev_mag;
        if hi >= TAIL_MIN_S && mag == 0.0 {
            return Ok(acc);
        }
        if hi >= TAIL_MIN_S && mag <= piece_tol && ratio < 0.5 {
            // Remaining pieces shrink at least as fast as a geometric series.
            let tail = mag * ratio / (1.0 - ratio);
            return Ok(acc
                + Estimate {
                    value: 0.0,
                    error_bound: tail,
                });
        }
        prev_mag = mag;
        lo = hi;
        hi *= 2.0;
    }
    Err(Error::Convergence {
        estimate: acc.value,
        error_bound: prev_mag,
        subdivisions: max_sub,
    })
}

/// ∫₀¹ f over the open unit interval, with optional interior breakpoints.
///
/// Breakpoints are sorted and deduplicated; 1/2 is always added so that each
/// endpoint segment is at most half the interval.
pub fn integrate_unit<F>(f: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&UnitPoint) -> Weighted,
{
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > 0.0 && x < 1.0)
        .chain(std::iter::once(0.5))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let segments = cuts.len() + 1;
    let tol = spec.abs_tol / segments as f64;
    let max_sub = spec.max_subdivisions;

    let first = *cuts.first().expect("at least one cut");
    let last = *cuts.last().expect("at least one cut");
    let mut total = endpoint_segment(&f, End::Zero, first, tol, max_sub)?;
    total = total + endpoint_segment(&f, End::One, last, tol, max_sub)?;
    let interior = |p: f64| f(&UnitPoint::from_p(p)).scaled(0.0);
    for w in cuts.windows(2) {
        total = total + adaptive(&interior, w[0], w[1], tol, max_sub)?;
    }
    Ok(total)
}
