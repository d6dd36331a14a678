//! Special functions and fused kernels.
//!
//! Every erfi that appears in the detector formulas is multiplied by a
//! Gaussian damping factor, and erfi itself overflows near |x| = 26.6. The
//! kernels here therefore work with the scaled quantity `exp(c) erfi(z)` and
//! never form the bare exponential when the caller can supply the damping.

mod faddeeva;
mod sici;

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) use faddeeva::faddeeva;
pub use sici::sine_integral;

/// Largest `x` for which `exp(x)` is finite.
const MAX_EXP_ARG: f64 = 709.78;

/// Largest `|x|` accepted by the unscaled [`erfi`].
pub const ERFI_MAX_ARG: f64 = 26.0;

/// Inside this radius erfi is summed from its Maclaurin series; outside it
/// goes through the Faddeeva function.
const SERIES_RADIUS: f64 = 1.0;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// `erf(b) - erf(a)` without cancellation when both arguments sit in the
/// same tail.
pub fn erf_diff(b: f64, a: f64) -> f64 {
    if a >= 0.0 && b >= 0.0 {
        erfc(a) - erfc(b)
    } else if a <= 0.0 && b <= 0.0 {
        erfc(-b) - erfc(-a)
    } else {
        erf(b) - erf(a)
    }
}

/// Imaginary error function `erfi(x) = -i erf(ix)` for real `|x| <= 26`.
pub fn erfi(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("erfi"));
    }
    if x.abs() > ERFI_MAX_ARG {
        return Err(Error::Overflow {
            function: "erfi",
            detail: format!("|x| = {} exceeds {ERFI_MAX_ARG}; use gauss_erfi", x.abs()),
        });
    }
    Ok(gauss_erfi(x, 0.0, 0.0)?.re)
}

/// `erfi(z)` for complex `z` with `|Re z| <= 26`.
pub fn erfi_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("erfi_complex"));
    }
    if z.re.abs() > ERFI_MAX_ARG {
        return Err(Error::Overflow {
            function: "erfi_complex",
            detail: format!("|Re z| = {} exceeds {ERFI_MAX_ARG}; use gauss_erfi", z.re.abs()),
        });
    }
    gauss_erfi(z.re, z.im, 0.0)
}

/// Fused kernel `exp(c) * erfi(x + iy)`.
///
/// Uses `erfi(z) = i - i exp(z^2) w(z)` for `Im z >= 0`, so the only
/// exponential ever formed is `exp(c + x^2 - y^2)`. Passing `c = -x*x`
/// (computed with the same `x`) cancels the `x^2` growth exactly. The lower
/// half plane follows from `erfi(conj z) = conj erfi(z)`.
pub fn gauss_erfi(x: f64, y: f64, c: f64) -> Result<Complex64> {
    if !(x.is_finite() && y.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite("gauss_erfi"));
    }
    if y < 0.0 {
        return gauss_erfi(x, -y, c).map(|v| v.conj());
    }
    if c > MAX_EXP_ARG {
        return Err(overflow(x, y, c));
    }

    if x * x + y * y <= SERIES_RADIUS * SERIES_RADIUS {
        return Ok(erfi_series(Complex64::new(x, y)) * c.exp());
    }

    let exponent = (c + x * x) - y * y;
    if exponent > MAX_EXP_ARG {
        return Err(overflow(x, y, c));
    }
    let w = faddeeva(x, y);
    let rotated = Complex64::from_polar(exponent.exp(), 2.0 * x * y) * w;
    // i e^c - i * rotated
    let re = rotated.im;
    let im = if y == 0.0 { 0.0 } else { c.exp() - rotated.re };
    let out = Complex64::new(re, im);
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(overflow(x, y, c))
    }
}

/// `exp(-x^2) erfi(x + iy)`, the form in which erfi enters every matrix
/// element.
pub fn damped_erfi(x: f64, y: f64) -> Result<Complex64> {
    gauss_erfi(x, y, -(x * x))
}

/// Dawson's integral `F(x) = (sqrt(pi)/2) exp(-x^2) erfi(x)`.
pub fn dawson(x: f64) -> f64 {
    if x.abs() <= SERIES_RADIUS {
        return 0.5 * PI.sqrt() * (-(x * x)).exp() * erfi_series(Complex64::new(x, 0.0)).re;
    }
    0.5 * PI.sqrt() * faddeeva(x, 0.0).im
}

fn overflow(x: f64, y: f64, c: f64) -> Error {
    Error::Overflow { function: "gauss_erfi", detail: format!("exp({c}) * erfi({x} + {y}i) is not representable") }
}

/// Maclaurin series `erfi(z) = 2/sqrt(pi) sum z^(2k+1) / (k! (2k+1))`.
fn erfi_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    for k in 1..200 {
        power = power * z2 / k as f64;
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// Spherical Bessel function of the first kind, order one.
pub fn spherical_bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.25 {
        // x/3 - x^3/30 + x^5/840 - x^7/45360 + x^9/3991680
        let x2 = x * x;
        return x * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 * (1.0 / 45_360.0 - x2 / 3_991_680.0))));
    }
    let (s, c) = x.sin_cos();
    s / (x * x) - c / x
}

/// `sin(x)/x` with the removable point at zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}
