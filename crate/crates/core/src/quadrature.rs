//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.
//!
//! When the integrand carries a `sin(S k)` factor the caller can pass its
//! half-period `pi/S`; the interval is then cut at the zeros of the sine
//! before any adaptive refinement, so every starting panel holds one lobe.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

/// Upper limit on the number of initial half-period panels.
const MAX_INITIAL_PANELS: usize = 20_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// A definite integral over a finite interval.
#[derive(Clone)]
pub struct IntegralSpec<F> {
    pub integrand: F,
    pub lower: f64,
    pub upper: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Spacing of the zeros of the oscillating factor, if any.
    pub half_period: Option<f64>,
    pub max_evaluations: usize,
}

impl<F: Fn(f64) -> f64> IntegralSpec<F> {
    pub fn new(integrand: F, lower: f64, upper: f64) -> Self {
        IntegralSpec {
            integrand,
            lower,
            upper,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            half_period: None,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn half_period(mut self, h: f64) -> Self {
        self.half_period = Some(h);
        self
    }

    pub fn max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "integration limits must be finite, got [{}, {}]",
                self.lower, self.upper
            )));
        }
        if self.lower > self.upper {
            return Err(Error::InvalidInput(format!("lower limit {} exceeds upper limit {}", self.lower, self.upper)));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if let Some(h) = self.half_period {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::InvalidInput(format!("half period must be positive, got {h}")));
            }
        }
        Ok(())
    }
}

/// Result of [`integrate_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub panels: usize,
}

pub fn integrate<F: Fn(f64) -> f64>(spec: &IntegralSpec<F>) -> Result<f64> {
    integrate_detailed(spec).map(|e| e.value)
}

pub fn integrate_detailed<F: Fn(f64) -> f64>(spec: &IntegralSpec<F>) -> Result<Estimate> {
    spec.validate()?;
    let (a, b) = (spec.lower, spec.upper);
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, evaluations: 0, panels: 0 });
    }

    let f = &spec.integrand;
    let mut evaluations = 0;
    let mut active = BinaryHeap::new();
    let mut settled = Vec::new();

    for (lo, hi) in initial_panels(a, b, spec.half_period) {
        let seg = kronrod(f, lo, hi)?;
        evaluations += 15;
        file(seg, &mut active, &mut settled);
    }

    loop {
        let (value, error) = totals(&active, &settled);
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) || active.is_empty() {
            return Ok(Estimate {
                value: ordered_sum(active.iter().chain(settled.iter())),
                error,
                evaluations,
                panels: active.len() + settled.len(),
            });
        }
        if evaluations + 30 > spec.max_evaluations {
            return Err(Error::NonConvergence { evaluations, estimate: value, error });
        }
        let worst = active.pop().expect("checked non-empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            settled.push(worst);
            continue;
        }
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let seg = kronrod(f, lo, hi)?;
            file(seg, &mut active, &mut settled);
        }
        evaluations += 30;
    }
}

fn initial_panels(a: f64, b: f64, half_period: Option<f64>) -> Vec<(f64, f64)> {
    let Some(h) = half_period else {
        return vec![(a, b)];
    };
    // cut at the multiples of h that fall strictly inside (a, b)
    let first = (a / h).floor() as i64 + 1;
    let last = (b / h).ceil() as i64 - 1;
    if last < first || (last - first) as usize + 2 > MAX_INITIAL_PANELS {
        return vec![(a, b)];
    }
    let mut edges = vec![a];
    edges.extend((first..=last).map(|k| k as f64 * h).filter(|&x| x > a && x < b));
    edges.push(b);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    /// Error level below which refinement only shuffles rounding noise.
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn file(seg: Segment, active: &mut BinaryHeap<Segment>, settled: &mut Vec<Segment>) {
    if seg.error <= seg.floor {
        settled.push(seg);
    } else {
        active.push(seg);
    }
}

fn totals(active: &BinaryHeap<Segment>, settled: &[Segment]) -> (f64, f64) {
    let mut value = 0.0;
    let mut error = 0.0;
    for s in active.iter().chain(settled) {
        value += s.value;
        error += s.error;
    }
    (value, error)
}

/// Sum the panel values in ascending magnitude with Neumaier compensation.
/// Ties are broken by position, so the result does not depend on the order
/// in which panels were refined.
fn ordered_sum<'a>(segments: impl Iterator<Item = &'a Segment>) -> f64 {
    let mut parts: Vec<(f64, f64)> = segments.map(|s| (s.value, s.lo)).collect();
    parts.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()).then(x.1.total_cmp(&y.1)));
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (v, _) in parts {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("integrand"))
        }
    };

    let fc = eval(center)?;
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut resabs = kron.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for (j, &wg) in WG.iter().take(3).enumerate() {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let (f1, f2) = (eval(center - dx)?, eval(center + dx)?);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        gauss += wg * (f1 + f2);
        kron += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let (f1, f2) = (eval(center - dx)?, eval(center + dx)?);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        kron += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * kron;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let width = half.abs();
    let value = kron * half;
    let resabs = resabs * width;
    let resasc = resasc * width;
    let floor = 50.0 * f64::EPSILON * resabs;
    Ok(Segment { lo, hi, value, error: rescale_error((kron - gauss) * half, resabs, resasc), floor })
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}
