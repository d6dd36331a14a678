//! Exact two-detector state for instantaneous (delta) switching.
//!
//! Detector A switches at `t = 0` and detector B at `t = T >= 0`. Both have
//! Gaussian spatial profiles of width `a`. The evolution is solved exactly
//! in the coupling, so every quantity here is non-perturbative in `lambda`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Bandlimit, DetectorParams, GaussianProfile, PairGeometry};
use crate::roots::{bisect, bracket_by_doubling};
use crate::specfun::{damped_erfi, gauss_erfi, sinc};
use crate::xstate::XStateDensityMatrix;

/// Bisection tolerance on the cutoff in [`lambda_max`].
pub const LAMBDA_MAX_XTOL: f64 = 1e-6;

/// Give up bracketing the [`lambda_max`] root beyond this cutoff.
const LAMBDA_MAX_LIMIT: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPairConfig {
    pub detector: DetectorParams,
    pub geometry: PairGeometry,
    pub profile: GaussianProfile,
    pub bandlimit: Bandlimit,
}

impl DeltaPairConfig {
    pub fn new(
        detector: DetectorParams,
        geometry: PairGeometry,
        profile: GaussianProfile,
        bandlimit: Bandlimit,
    ) -> Self {
        DeltaPairConfig { detector, geometry, profile, bandlimit }
    }

    fn lambda_sq(&self) -> f64 {
        self.detector.lambda_sq()
    }

    fn width(&self) -> f64 {
        self.profile.width
    }

    /// `((S + T)/2a, (S - T)/2a)`
    fn shifted_arguments(&self) -> [f64; 2] {
        let (s, t, a) = (self.geometry.separation, self.geometry.delay, self.width());
        [(s + t) / (2.0 * a), (s - t) / (2.0 * a)]
    }
}

/// Single-detector factor `f = exp(-lambda^2 (1 - exp(-a^2 Lambda^2)) / (2 pi a^2))`.
pub fn f_gaussian_profile(cfg: &DeltaPairConfig) -> f64 {
    (-f_exponent(cfg)).exp()
}

fn f_exponent(cfg: &DeltaPairConfig) -> f64 {
    let a = cfg.width();
    // 1 - exp(-a^2 L^2), exactly 1 at L = inf
    let filled = -(-(a * cfg.bandlimit.value()).powi(2)).exp_m1();
    cfg.lambda_sq() * filled / (2.0 * PI * a * a)
}

/// Commutator phase `theta = -i [Y_A, Y_B]`.
pub fn theta_gaussian_profile(cfg: &DeltaPairConfig) -> Result<f64> {
    let a = cfg.width();
    let s = cfg.geometry.separation;
    let pre = cfg.lambda_sq() / (4.0 * PI.sqrt() * a * s);
    let [x0, x1] = cfg.shifted_arguments();
    let sum = match cfg.bandlimit {
        Bandlimit::Infinite => (-x0 * x0).exp() - (-x1 * x1).exp(),
        Bandlimit::Finite(lam) => {
            let y = a * lam;
            damped_erfi(x0, y)?.im - damped_erfi(x1, y)?.im
        }
    };
    Ok(pre * sum)
}

/// Anticommutator term `omega`, sign fixed by its momentum integral
/// `(2 lambda^2 / pi S) int_0^Lambda exp(-a^2 k^2) cos(kT) sin(kS) dk`.
pub fn omega_gaussian_profile(cfg: &DeltaPairConfig) -> Result<f64> {
    let a = cfg.width();
    let s = cfg.geometry.separation;
    let pre = cfg.lambda_sq() / (2.0 * PI.sqrt() * a * s);
    let mut sum = 0.0;
    for x in cfg.shifted_arguments() {
        let whole = damped_erfi(x, 0.0)?.re;
        let cut = match cfg.bandlimit {
            Bandlimit::Infinite => 0.0,
            Bandlimit::Finite(lam) => damped_erfi(x, a * lam)?.re,
        };
        sum += whole - cut;
    }
    Ok(pre * sum)
}

/// Point-like (`a -> 0`) limit of `f`.
pub fn f_pointlike(coupling: f64, l: Bandlimit) -> f64 {
    (-coupling * coupling * l.value().powi(2) / (2.0 * PI)).exp()
}

/// Point-like limit of `theta`: difference of one-dimensional Fourier
/// transforms of the cutoff window at `S + T` and `T - S`.
pub fn theta_pointlike(coupling: f64, g: &PairGeometry, l: Bandlimit) -> Result<f64> {
    let lam = l.require_finite("theta_pointlike")?;
    let (s, t) = (g.separation, g.delay);
    Ok(coupling * coupling * lam / (2.0 * PI * s) * (sinc(lam * (t + s)) - sinc(lam * (t - s))))
}

/// Density matrix after both detectors have interacted.
pub fn rho_delta(cfg: &DeltaPairConfig) -> Result<XStateDensityMatrix> {
    let f = f_gaussian_profile(cfg);
    let theta = theta_gaussian_profile(cfg)?;
    let omega = omega_gaussian_profile(cfg)?;
    let gap = cfg.detector.gap;
    let t = cfg.geometry.delay;
    Ok(assemble_rho(f, f, theta, omega, gap * t, -gap * t))
}

/// X-state entries from the matrix-element functions, with the phases
/// `Omega_A T_A + Omega_B T_B` and `Omega_A T_A - Omega_B T_B`.
fn assemble_rho(f_a: f64, f_b: f64, theta: f64, omega: f64, phase_sum: f64, phase_diff: f64) -> XStateDensityMatrix {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let ff = f_a * f_b * omega.cosh();
    let anti = Complex64::new(f_a * f_b * omega.sinh(), f_b * s2);
    XStateDensityMatrix {
        r11: 0.25 * (1.0 + f_a + f_b * c2 + ff),
        r22: 0.25 * (1.0 + f_a - f_b * c2 - ff),
        r33: 0.25 * (1.0 - f_a + f_b * c2 - ff),
        r44: 0.25 * (1.0 - f_a - f_b * c2 + ff),
        r14: 0.25 * Complex64::from_polar(1.0, -phase_sum) * anti,
        r23: -0.25 * Complex64::from_polar(1.0, -phase_diff) * anti,
    }
}

/// Transition probabilities `(P_A, P_B)` of the first and second detector.
pub fn pd_delta(cfg: &DeltaPairConfig) -> Result<(f64, f64)> {
    let e = f_exponent(cfg);
    let theta = theta_gaussian_profile(cfg)?;
    // (1 - f)/2 and (1 - f cos 2 theta)/2 without cancellation at weak coupling
    let pa = -0.5 * (-e).exp_m1();
    Ok((pa, pa + (-e).exp() * theta.sin().powi(2)))
}

/// `P_A` alone, which needs neither the separation nor the delay.
pub fn pa_delta(coupling: f64, profile: &GaussianProfile, l: Bandlimit) -> f64 {
    let cfg = DeltaPairConfig {
        detector: DetectorParams { gap: 0.0, coupling },
        geometry: PairGeometry { separation: 1.0, delay: 0.0 },
        profile: *profile,
        bandlimit: l,
    };
    -0.5 * (-f_exponent(&cfg)).exp_m1()
}

pub fn negativity_delta(cfg: &DeltaPairConfig) -> Result<f64> {
    Ok(rho_delta(cfg)?.negativity())
}

/// Effective spatial profile of a Gaussian detector seen through the
/// cutoff: the profile convolved with the inverse transform of the
/// momentum ball `|k| < Lambda`.
pub fn effective_profile_gaussian(x: f64, profile: &GaussianProfile, l: Bandlimit) -> Result<f64> {
    let lam = l.require_finite("effective_profile_gaussian")?;
    let a = profile.width;
    let x = x.abs();
    let u = a * lam / SQRT_2;
    let v = x / (SQRT_2 * a);
    // exp(-v^2) Re erf(u + iv)
    let body = gauss_erfi(v, u, -(v * v))?.im;
    let tail = (-0.5 * (a * lam).powi(2)).exp() * SQRT_2 * a * lam / PI.sqrt() * sinc(lam * x);
    Ok((body - tail) / ((2.0 * PI).powf(1.5) * a.powi(3)))
}

/// The bare Gaussian profile.
pub fn gaussian_profile_density(x: f64, profile: &GaussianProfile) -> f64 {
    let a = profile.width;
    (-(x * x) / (2.0 * a * a)).exp() / ((2.0 * PI).powf(1.5) * a.powi(3))
}

/// Cutoff at which `P_A` comes within `tolerance` of its unbounded value.
///
/// `P_{A,Lambda} - P_{A,inf} = (f(Lambda) - f(inf)) / 2` falls
/// monotonically from `(1 - f(inf))/2` to zero, so the root is unique.
pub fn lambda_max(coupling: f64, profile: &GaussianProfile, tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0 && tolerance < 0.5) {
        return Err(Error::InvalidInput(format!("tolerance must lie in (0, 1/2), got {tolerance}")));
    }
    let p_inf = pa_delta(coupling, profile, Bandlimit::Infinite);
    let excess = |lam: f64| Ok(p_inf - pa_delta(coupling, profile, Bandlimit::Finite(lam)) - tolerance);
    if excess(0.0)? <= 0.0 {
        return Err(Error::BracketFailure(format!(
            "|P_A - P_A(inf)| never reaches {tolerance} at width {}",
            profile.width
        )));
    }
    let (lo, hi) = bracket_by_doubling(excess, 0.0, 1.0, LAMBDA_MAX_LIMIT)?;
    bisect(excess, lo, hi, LAMBDA_MAX_XTOL)
}

/// [`lambda_max`] for each width, in input order.
pub fn lambda_max_sweep(widths: &[f64], tolerance: f64, coupling: f64) -> Result<Vec<(f64, f64)>> {
    widths.iter().map(|&w| Ok((w, lambda_max(coupling, &GaussianProfile::new(w)?, tolerance)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(coupling: f64, a: f64, s: f64, t: f64, l: Bandlimit) -> DeltaPairConfig {
        DeltaPairConfig::new(
            DetectorParams::new(0.3, coupling).unwrap(),
            PairGeometry::new(s, t).unwrap(),
            GaussianProfile::new(a).unwrap(),
            l,
        )
    }

    #[test]
    fn zero_cutoff_is_ground_state() {
        let c = cfg(1.0, 0.2, 0.8, 1.0, Bandlimit::Finite(0.0));
        assert_eq!(f_gaussian_profile(&c), 1.0);
        assert_eq!(theta_gaussian_profile(&c).unwrap(), 0.0);
        assert_eq!(omega_gaussian_profile(&c).unwrap(), 0.0);
        let rho = rho_delta(&c).unwrap();
        assert_eq!((rho.r11, rho.r22, rho.r33, rho.r44), (1.0, 0.0, 0.0, 0.0));
        assert_eq!(pd_delta(&c).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn f_checkpoint() {
        let c = cfg(1.0, 0.2, 1.0, 0.0, Bandlimit::Infinite);
        let want = (-1.0 / (2.0 * PI * 0.04f64)).exp();
        assert!((f_gaussian_profile(&c) - want).abs() < 1e-16);
        assert!((want - 0.018_706_699_124_980_165).abs() < 1e-17);
    }

    #[test]
    fn f_narrow_profile_limit() {
        for lam in [0.5, 2.0, 5.0] {
            let l = Bandlimit::Finite(lam);
            let f = f_gaussian_profile(&cfg(1.0, 1e-4, 1.0, 0.0, l));
            let p = f_pointlike(1.0, l);
            assert!((f - p).abs() <= 1e-6 * p);
        }
    }

    #[test]
    fn fully_mixed_limit() {
        let rho = assemble_rho(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for r in [rho.r11, rho.r22, rho.r33, rho.r44] {
            assert_eq!(r, 0.25);
        }
        assert_eq!(rho.r14.norm(), 0.0);
    }

    #[test]
    fn effective_profile_at_origin_is_finite() {
        let p = GaussianProfile::new(0.3).unwrap();
        let g0 = effective_profile_gaussian(0.0, &p, Bandlimit::Finite(4.0)).unwrap();
        let g1 = effective_profile_gaussian(1e-9, &p, Bandlimit::Finite(4.0)).unwrap();
        assert!(g0.is_finite() && (g0 - g1).abs() < 1e-12 * g0.abs());
    }

    #[test]
    fn lambda_max_rejects_unreachable_tolerance() {
        let wide = GaussianProfile::new(2.0).unwrap();
        assert!(matches!(lambda_max(1.0, &wide, 0.02), Err(Error::BracketFailure(_))));
        assert!(lambda_max(1.0, &wide, 0.6).is_err());
    }

    #[test]
    fn lambda_max_point_like() {
        // f ~ exp(-L^2/2pi) once a L << 1, f(inf) ~ 0
        let narrow = GaussianProfile::new(1e-3).unwrap();
        let got = lambda_max(1.0, &narrow, 0.01).unwrap();
        let want = (2.0 * PI * 50f64.ln()).sqrt();
        assert!((got - want).abs() < 1e-3, "{got} vs {want}");
    }
}
