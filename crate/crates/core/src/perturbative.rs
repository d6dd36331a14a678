//! Gaussian switching to second order in the coupling.
//!
//! The detectors are static, identical, switched by `exp(-t^2/2)` and
//! separated by `S`. The field has no modes with `|k| > Lambda`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Bandlimit, DetectorParams, PairGeometry};
use crate::quadrature::{integrate, IntegralSpec};
use crate::roots::golden_max;
use crate::specfun::{damped_erfi, erf_diff, erfc, gauss_erfi, sine_integral, spherical_bessel_j1};
use crate::xstate::XStateDensityMatrix;

/// Stand-in cutoff for the infinite-bandlimit real part of the coherence.
/// The finite-cutoff correction is damped by `exp(-Lambda^2)`, which
/// underflows long before this value.
pub const RE_X_PROXY_BANDLIMIT: f64 = 1e3;

pub const OMEGA_CRIT_HALFWIDTH: f64 = 10.0;

/// Bracket width for [`omega_crit`].
const OMEGA_CRIT_XTOL: f64 = 1e-8;

fn sqrt_pi() -> f64 {
    PI.sqrt()
}

/// `P_inf / lambda^2 = (exp(-W^2) - sqrt(pi) W erfc(W)) / (4 pi)`.
fn pd_infinite_unit(w: f64) -> f64 {
    ((-w * w).exp() - sqrt_pi() * w * erfc(w)) / (4.0 * PI)
}

/// Single-detector transition probability.
pub fn pd_gaussian(d: &DetectorParams, l: Bandlimit) -> f64 {
    let w = d.gap;
    let unit = match l {
        Bandlimit::Infinite => pd_infinite_unit(w),
        Bandlimit::Finite(lam) => {
            let top = w + lam;
            ((-w * w).exp() - (-top * top).exp() - sqrt_pi() * w * erf_diff(top, w)) / (4.0 * PI)
        }
    };
    d.lambda_sq() * unit
}

/// The finite-cutoff probability written as the unbounded one minus
/// corrections at the shifted gap `Omega + Lambda`.
pub fn pd_decomposed(d: &DetectorParams, l: Bandlimit) -> Result<f64> {
    let lam = l.require_finite("pd_decomposed")?;
    let w = d.gap;
    let top = w + lam;
    let unit = pd_infinite_unit(w) - pd_infinite_unit(top) - lam * erfc(top) / (4.0 * sqrt_pi());
    Ok(d.lambda_sq() * unit)
}

/// Coherence term `X` of the two-detector state.
pub fn x_gaussian(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<Complex64> {
    Ok(Complex64::new(re_x(d, g, l)?, im_x(d, g, l)?))
}

pub(crate) fn re_x(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let s = g.separation;
    let lam = l.value().min(RE_X_PROXY_BANDLIMIT);
    if lam == 0.0 {
        return Ok(0.0);
    }
    let x = 0.5 * s;
    let whole = damped_erfi(x, 0.0)?.re;
    let cut = gauss_erfi(x, lam, -(x * x))?.re;
    Ok(d.lambda_sq() * (-d.gap * d.gap).exp() / (4.0 * sqrt_pi() * s) * (whole - cut))
}

/// `lambda^2 exp(-Omega^2) / (2 pi S)`, the factor in front of the
/// momentum integral of `Im X`.
fn im_x_prefactor(d: &DetectorParams, s: f64) -> f64 {
    d.lambda_sq() * (-d.gap * d.gap).exp() / (2.0 * PI * s)
}

fn im_x_kernel(s: f64) -> impl Fn(f64) -> f64 {
    move |k| damped_erfi(k, 0.0).map_or(f64::NAN, |v| v.re) * (s * k).sin()
}

fn im_x_segment(s: f64, lo: f64, hi: f64) -> Result<f64> {
    integrate(&IntegralSpec::new(im_x_kernel(s), lo, hi).half_period(PI / s))
}

fn im_x(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let s = g.separation;
    match l {
        Bandlimit::Infinite => Ok(im_x_infinite(d, s)),
        Bandlimit::Finite(lam) => Ok(im_x_prefactor(d, s) * im_x_segment(s, 0.0, lam)?),
    }
}

fn im_x_infinite(d: &DetectorParams, s: f64) -> f64 {
    d.lambda_sq() * (-d.gap * d.gap).exp() * (-s * s / 4.0).exp() / (4.0 * sqrt_pi() * s)
}

/// `Im X` at each cutoff in `lambdas`, which must be non-decreasing. The
/// momentum integral is accumulated from one cutoff to the next, so a full
/// sweep costs one pass over `[0, max]`.
pub fn im_x_profile(d: &DetectorParams, g: &PairGeometry, lambdas: &[f64]) -> Result<Vec<f64>> {
    let s = g.separation;
    let pre = im_x_prefactor(d, s);
    let mut out = Vec::with_capacity(lambdas.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &lam in lambdas {
        if !(lam.is_finite() && lam >= prev) {
            return Err(Error::InvalidInput(format!(
                "cutoffs must be finite and non-decreasing, got {lam} after {prev}"
            )));
        }
        if lam > prev {
            acc += im_x_segment(s, prev, lam)?;
            prev = lam;
        }
        out.push(pre * acc);
    }
    Ok(out)
}

/// Sine-integral approximation of `Im X`, accurate once `Lambda > 5`.
pub fn imx_si_approx(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let lam = l.require_finite("imx_si_approx")?;
    let s = g.separation;
    let si = sine_integral(s * lam);
    Ok(d.lambda_sq() * (-d.gap * d.gap).exp() / (4.0 * sqrt_pi() * s) * ((-s * s / 4.0).exp() - 1.0 + si / FRAC_PI_2))
}

/// Harvested negativity `max(0, |X| - P_D)` for identical detectors.
pub fn negativity_perturbative(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let x = x_gaussian(d, g, l)?;
    Ok((x.norm() - pd_gaussian(d, l)).max(0.0))
}

/// Negativity along a non-decreasing list of finite cutoffs.
pub fn negativity_profile(d: &DetectorParams, g: &PairGeometry, lambdas: &[f64]) -> Result<Vec<f64>> {
    let im = im_x_profile(d, g, lambdas)?;
    lambdas
        .iter()
        .zip(im)
        .map(|(&lam, im)| {
            let l = Bandlimit::Finite(lam);
            let x = Complex64::new(re_x(d, g, l)?, im);
            Ok((x.norm() - pd_gaussian(d, l)).max(0.0))
        })
        .collect()
}

/// Second-order two-detector state. The correlation term between the
/// excited states is not evaluated and is set to zero; it does not enter
/// the negativity at this order.
pub fn perturbative_state(d: &DetectorParams, g: &PairGeometry, l: Bandlimit) -> Result<XStateDensityMatrix> {
    let p = pd_gaussian(d, l);
    let x = x_gaussian(d, g, l)?;
    Ok(XStateDensityMatrix::perturbative(p, x, Complex64::new(0.0, 0.0)))
}

/// Effective profile of a point-like detector under the cutoff,
/// `sqrt(2/pi) Lambda^2 j1(Lambda x) / x`.
pub fn effective_profile_pointlike(x: f64, l: Bandlimit) -> Result<f64> {
    let lam = l.require_finite("effective_profile_pointlike")?;
    let c = (2.0 / PI).sqrt();
    let u = lam * x.abs();
    if u < 1e-8 {
        return Ok(c * lam.powi(3) / 3.0);
    }
    Ok(c * lam * lam * spherical_bessel_j1(u) / x.abs())
}

/// Magnitude of the gap that maximises the de-excitation probability at
/// cutoff `Lambda`, searched on `[-(Lambda + halfwidth), 0]`.
pub fn omega_crit(l: Bandlimit, search_halfwidth: f64) -> Result<f64> {
    let lam = l.require_finite("omega_crit")?;
    if !(lam > 0.0) {
        return Err(Error::InvalidInput(format!("omega_crit needs a positive bandlimit, got {lam}")));
    }
    if !(search_halfwidth > 0.0) {
        return Err(Error::InvalidInput("search half-width must be positive".into()));
    }
    let p = |w: f64| Ok(pd_gaussian(&DetectorParams { gap: w, coupling: 1.0 }, l));
    let w = golden_max(p, -(lam + search_halfwidth), 0.0, OMEGA_CRIT_XTOL)?;
    Ok(-w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(gap: f64) -> DetectorParams {
        DetectorParams::new(gap, 1.0).unwrap()
    }

    #[test]
    fn zero_cutoff_vanishes() {
        for w in [-3.0, 0.0, 0.5, 4.0] {
            assert_eq!(pd_gaussian(&det(w), Bandlimit::Finite(0.0)), 0.0);
        }
        let g = PairGeometry::separated(1.0).unwrap();
        assert_eq!(x_gaussian(&det(0.01), &g, Bandlimit::Finite(0.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn probability_checkpoints() {
        let inf = pd_gaussian(&det(0.0), Bandlimit::Infinite);
        assert!((inf - 1.0 / (4.0 * PI)).abs() < 1e-16);
        let one = pd_gaussian(&det(0.0), Bandlimit::Finite(1.0));
        assert!((one - (1.0 - (-1.0f64).exp()) / (4.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn decomposition_at_large_cutoff() {
        let d = det(1.0);
        let l = Bandlimit::Finite(20.0);
        let top = 21.0;
        assert!(pd_infinite_unit(top) < 1e-100);
        assert!(20.0 * erfc(top) < 1e-100);
        assert_eq!(pd_decomposed(&d, l).unwrap(), pd_gaussian(&d, Bandlimit::Infinite));
    }

    #[test]
    fn imaginary_part_at_infinity() {
        let g = PairGeometry::separated(1.0).unwrap();
        let v = x_gaussian(&det(0.01), &g, Bandlimit::Infinite).unwrap().im;
        let want = (-1e-4f64).exp() * (-0.25f64).exp() / (4.0 * sqrt_pi());
        assert!((v - want).abs() < 1e-16);
    }

    #[test]
    fn profile_matches_pointwise() {
        let d = det(0.3);
        let g = PairGeometry::separated(1.7).unwrap();
        let grid = [0.0, 0.5, 0.5, 3.0, 12.0];
        let prof = im_x_profile(&d, &g, &grid).unwrap();
        for (&lam, &v) in grid.iter().zip(&prof) {
            let direct = x_gaussian(&d, &g, Bandlimit::Finite(lam)).unwrap().im;
            assert!((v - direct).abs() < 1e-13, "Lambda {lam}: {v} vs {direct}");
        }
        assert!(im_x_profile(&d, &g, &[1.0, 0.5]).is_err());
    }

    #[test]
    fn pointlike_profile_limit() {
        let l = Bandlimit::Finite(3.0);
        let c = (2.0 / PI).sqrt();
        assert!((effective_profile_pointlike(0.0, l).unwrap() - c * 9.0).abs() < 1e-14);
        let near = effective_profile_pointlike(1e-6, l).unwrap();
        assert!((near - c * 9.0).abs() < 1e-9);
        // first zero of j1 at u = 4.493409457909064
        assert!(effective_profile_pointlike(4.493_409_457_909_064 / 3.0, l).unwrap().abs() < 1e-13);
        assert!(effective_profile_pointlike(1.0, Bandlimit::Infinite).is_err());
    }

    #[test]
    fn omega_crit_rejects_bad_input() {
        assert!(omega_crit(Bandlimit::Infinite, 10.0).is_err());
        assert!(omega_crit(Bandlimit::Finite(0.0), 10.0).is_err());
    }
}
