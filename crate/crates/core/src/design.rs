//! Detector pairs and arrays whose harvested negativity switches off above a
//! chosen bandlimit.
//!
//! The oscillating part of `Im X` is bounded by a `1/Lambda` envelope. A pair
//! whose transition probability matches the envelope-bounded coherence at
//! `Lambda_threshold` cannot harvest at any larger cutoff, while still
//! harvesting at some smaller ones. Several such pairs with different
//! separations oscillate at different rates and together cover most of
//! `(0, Lambda_threshold)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{Bandlimit, DetectorParams, PairGeometry};
use crate::perturbative::{negativity_profile, pd_gaussian, re_x, x_gaussian};
use crate::roots::bisect;

pub const SEPARATION_RANGE: (f64, f64) = (0.05, 10.0);
pub const GAP_RANGE: (f64, f64) = (0.0, 5.0);
pub const ROOT_XTOL: f64 = 1e-8;
/// Scan step for sign changes of the residual in the separation.
pub const SEPARATION_SCAN_STEP: f64 = 0.01;
/// Spacing of candidate separations offered to [`design_array`].
pub const CANDIDATE_STEP: f64 = 0.05;
/// Negativity counts as present above this multiple of `lambda^2`.
pub const POSITIVITY_FLOOR: f64 = 1e-12;
pub const DEFAULT_GRID_STEP: f64 = 0.1;
/// Candidates must show no negativity up to this multiple of the threshold.
const SOUNDNESS_SPAN: f64 = 5.0;
const SOUNDNESS_STEP: f64 = 1.0;

/// Upper envelope of `Im X` over the cutoff:
/// `lambda^2 exp(-Omega^2) / (2 pi^1.5 S^2 Lambda) + Im X_inf`.
pub fn envelope_imx(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let lam = l.value();
    if !(lam > 0.0) {
        return Err(Error::InvalidInput("envelope needs a positive bandlimit".into()));
    }
    let s = g.separation;
    let inf = x_gaussian(d, g, Bandlimit::Infinite)?.im;
    Ok(d.coupling * d.coupling * (-d.gap * d.gap).exp() / (2.0 * PI.powf(1.5) * s * s * lam) + inf)
}

/// Which of the pair's parameters is held fixed while the other is solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fixed {
    Gap(f64),
    Separation(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSpec {
    pub lambda_threshold: f64,
    pub fixed: Fixed,
    pub coupling: f64,
}

impl ThresholdSpec {
    pub fn new(lambda_threshold: f64, fixed: Fixed) -> Result<Self> {
        if !(lambda_threshold.is_finite() && lambda_threshold > 0.0) {
            return Err(Error::InvalidInput(format!("threshold must be positive, got {lambda_threshold}")));
        }
        Ok(ThresholdSpec { lambda_threshold, fixed, coupling: 1.0 })
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }
}

/// `P_D - |Re X + i envelope|` at the threshold. Negative where the pair
/// might still harvest at the threshold, positive where it cannot.
pub fn threshold_residual(gap: f64, separation: f64, lambda_threshold: f64, coupling: f64) -> Result<f64> {
    let d = DetectorParams::new(gap, coupling)?;
    let g = PairGeometry::separated(separation)?;
    let l = Bandlimit::finite(lambda_threshold)?;
    let re = re_x(&d, &g, l)?;
    let env = envelope_imx(&d, &g, l)?;
    Ok(pd_gaussian(&d, l) - Complex64::new(re, env).norm())
}

pub fn solve_threshold_pair(spec: &ThresholdSpec) -> Result<(f64, f64)> {
    let lth = spec.lambda_threshold;
    let c = spec.coupling;
    match spec.fixed {
        Fixed::Separation(s) => {
            let (lo, hi) = GAP_RANGE;
            let w = bisect(|w| threshold_residual(w, s, lth, c), lo, hi, ROOT_XTOL)?;
            Ok((w, s))
        }
        Fixed::Gap(w) => {
            let roots = separation_roots(w, lth, c)?;
            let (lo, hi) = SEPARATION_RANGE;
            roots.first().map(|&s| (w, s)).ok_or(Error::NoSignChange { lo, hi })
        }
    }
}

/// Every root of the residual in the separation at a fixed gap, found by
/// scanning for sign changes and bisecting each bracket.
pub fn separation_roots(gap: f64, lambda_threshold: f64, coupling: f64) -> Result<Vec<f64>> {
    let (lo, hi) = SEPARATION_RANGE;
    let n = ((hi - lo) / SEPARATION_SCAN_STEP).round() as usize;
    let xs: Vec<f64> = (0..=n).map(|i| lo + i as f64 * SEPARATION_SCAN_STEP).collect();
    let r: Vec<f64> =
        xs.iter().map(|&s| threshold_residual(gap, s, lambda_threshold, coupling)).collect::<Result<_>>()?;
    let mut roots = Vec::new();
    for i in 0..n {
        if r[i] == 0.0 {
            roots.push(xs[i]);
        } else if r[i].signum() != r[i + 1].signum() && r[i + 1] != 0.0 {
            let f = |s| threshold_residual(gap, s, lambda_threshold, coupling);
            roots.push(bisect(f, xs[i], xs[i + 1], ROOT_XTOL)?);
        }
    }
    Ok(roots)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectorArray {
    /// `(gap, separation)`, separations strictly increasing.
    pub pairs: Vec<(f64, f64)>,
    pub threshold: f64,
    pub coupling: f64,
}

impl DetectorArray {
    pub fn new(mut pairs: Vec<(f64, f64)>, threshold: f64, coupling: f64) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("an array needs at least one pair".into()));
        }
        pairs.sort_by(|a, b| a.1.total_cmp(&b.1));
        if pairs.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(Error::InvalidInput("pair separations must be distinct".into()));
        }
        Ok(DetectorArray { pairs, threshold, coupling })
    }
}

/// Negativity per pair on `(lo, hi]` at multiples of `step`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub grid: Vec<f64>,
    /// `covered[i]`: some pair harvests at `grid[i]`.
    pub covered: Vec<bool>,
    pub fraction: f64,
    pub uncovered: Vec<f64>,
}

/// Grid `lo + k step` for `k = 1, 2, ...` up to `hi`.
pub fn cutoff_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (1..=n).map(|k| lo + k as f64 * step).collect()
}

fn harvests(d: &DetectorParams, s: f64, grid: &[f64]) -> Result<Vec<bool>> {
    let g = PairGeometry::separated(s)?;
    let floor = POSITIVITY_FLOOR * d.coupling * d.coupling;
    Ok(negativity_profile(d, &g, grid)?.into_iter().map(|n| n > floor).collect())
}

pub fn coverage_on(arr: &DetectorArray, lo: f64, hi: f64, step: f64) -> Result<CoverageReport> {
    if !(step > 0.0) {
        return Err(Error::InvalidInput(format!("grid step must be positive, got {step}")));
    }
    let grid = cutoff_grid(lo, hi, step);
    let per_pair: Vec<Vec<bool>> = arr
        .pairs
        .par_iter()
        .map(|&(w, s)| harvests(&DetectorParams::new(w, arr.coupling)?, s, &grid))
        .collect::<Result<_>>()?;
    let covered: Vec<bool> = (0..grid.len()).map(|i| per_pair.iter().any(|p| p[i])).collect();
    Ok(report(grid, covered))
}

fn report(grid: Vec<f64>, covered: Vec<bool>) -> CoverageReport {
    let hits = covered.iter().filter(|&&c| c).count();
    let fraction = if grid.is_empty() { 0.0 } else { hits as f64 / grid.len() as f64 };
    let uncovered = grid.iter().zip(&covered).filter(|(_, &c)| !c).map(|(&x, _)| x).collect();
    CoverageReport { grid, covered, fraction, uncovered }
}

/// Coverage of `(0, threshold]`.
pub fn array_coverage_check(arr: &DetectorArray, grid_step: f64) -> Result<CoverageReport> {
    coverage_on(arr, 0.0, arr.threshold, grid_step)
}

struct Candidate {
    gap: f64,
    separation: f64,
    covered: Vec<bool>,
}

/// Build `n_pairs` threshold pairs. The first pair has the requested gap.
/// The rest are drawn from separations on a regular grid, each with its
/// gap solved from the threshold condition, keeping only those that stay
/// silent on `[threshold, 5 threshold]`. They are picked greedily by how
/// much of `(0, threshold]` they add, ties going to the separation
/// farthest from those already chosen.
pub fn design_array(threshold: f64, n_pairs: usize, gap: f64, coupling: f64) -> Result<DetectorArray> {
    if n_pairs == 0 {
        return Err(Error::InvalidInput("n_pairs must be at least 1".into()));
    }
    let spec = ThresholdSpec::new(threshold, Fixed::Gap(gap))?.with_coupling(coupling);
    let anchor = solve_threshold_pair(&spec)?;
    if n_pairs == 1 {
        return DetectorArray::new(vec![anchor], threshold, coupling);
    }

    let grid = cutoff_grid(0.0, threshold, DEFAULT_GRID_STEP);
    let above = cutoff_grid(threshold - SOUNDNESS_STEP, SOUNDNESS_SPAN * threshold, SOUNDNESS_STEP);
    let (lo, hi) = SEPARATION_RANGE;
    let n = ((hi - lo) / CANDIDATE_STEP).round() as usize;
    let seps: Vec<f64> = (0..=n).map(|i| lo + i as f64 * CANDIDATE_STEP).collect();

    let mut pool: Vec<Candidate> = seps
        .par_iter()
        .map(|&s| candidate(s, threshold, coupling, &grid, &above))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .filter(|c| (c.separation - anchor.1).abs() > CANDIDATE_STEP / 2.0)
        .collect();

    let d = DetectorParams::new(anchor.0, coupling)?;
    let mut union = harvests(&d, anchor.1, &grid)?;
    let mut chosen = vec![anchor];
    while chosen.len() < n_pairs {
        let Some(best) = pick(&pool, &union, &chosen) else {
            return Err(Error::InsufficientRoots { wanted: n_pairs, found: chosen.len() });
        };
        let c = pool.swap_remove(best);
        for (u, &h) in union.iter_mut().zip(&c.covered) {
            *u |= h;
        }
        chosen.push((c.gap, c.separation));
    }
    DetectorArray::new(chosen, threshold, coupling)
}

fn candidate(s: f64, threshold: f64, coupling: f64, grid: &[f64], above: &[f64]) -> Result<Option<Candidate>> {
    let spec = ThresholdSpec::new(threshold, Fixed::Separation(s))?.with_coupling(coupling);
    let (gap, _) = match solve_threshold_pair(&spec) {
        Ok(p) => p,
        Err(Error::NoSignChange { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let d = DetectorParams::new(gap, coupling)?;
    if harvests(&d, s, above)?.into_iter().any(|h| h) {
        return Ok(None);
    }
    Ok(Some(Candidate { gap, separation: s, covered: harvests(&d, s, grid)? }))
}

fn pick(pool: &[Candidate], union: &[bool], chosen: &[(f64, f64)]) -> Option<usize> {
    let gain = |c: &Candidate| c.covered.iter().zip(union).filter(|(&h, &u)| h && !u).count();
    let spread = |c: &Candidate| chosen.iter().map(|p| (p.1 - c.separation).abs()).fold(f64::INFINITY, f64::min);
    (0..pool.len()).max_by(|&i, &j| {
        let (a, b) = (&pool[i], &pool[j]);
        gain(a).cmp(&gain(b)).then(spread(a).total_cmp(&spread(b))).then(b.separation.total_cmp(&a.separation))
    })
}
