//! Faddeeva function `w(z) = exp(-z^2) erfc(-iz)` on the closed upper half plane.
//!
//! Power series near the origin, Laplace continued fraction elsewhere, with
//! the Gautschi shift for the intermediate annulus. Region boundaries and
//! term counts follow Poppe & Wijers, ACM TOMS 16 (1990) 38-46, which gives
//! about 14 significant digits. Only `Im z >= 0` is needed by this crate, so
//! the lower-half-plane reflection of the original routine is omitted.

use num_complex::Complex64;

/// 2 / sqrt(pi)
pub(crate) const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// `w(x + iy)` for `y >= 0`.
pub(crate) fn faddeeva(x: f64, y: f64) -> Complex64 {
    debug_assert!(y >= 0.0);
    let (u, v) = first_quadrant(x.abs(), y);
    // w(-x + iy) = conj(w(x + iy))
    if x < 0.0 {
        Complex64::new(u, -v)
    } else {
        Complex64::new(u, v)
    }
}

fn first_quadrant(xabs: f64, yabs: f64) -> (f64, f64) {
    let xs = xabs / 6.3;
    let ys = yabs / 4.4;
    let qrho = xs * xs + ys * ys;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;

    if qrho < 0.085264 {
        // w = exp(-z^2) (1 + i erfi(z)), erfi by its Maclaurin series
        let q = (1.0 - 0.85 * ys) * qrho.sqrt();
        let n = (6.0 + 72.0 * q).round() as i32;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / f64::from(j);
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let fi = f64::from(i);
            let xaux = (xsum * xquad - ysum * yquad) / fi;
            ysum = (xsum * yquad + ysum * xquad) / fi;
            xsum = xaux + 1.0 / f64::from(j);
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * xabs - ysum * yabs);
        let daux = (-xquad).exp();
        let u2 = daux * yquad.cos();
        let v2 = -daux * yquad.sin();
        return (u1 * u2 - v1 * v2, u1 * v2 + v1 * u2);
    }

    let (h, kapn, nu) = if qrho > 1.0 {
        let q = qrho.sqrt();
        (0.0, 0, (3.0 + 1442.0 / (26.0 * q + 77.0)) as i32)
    } else {
        let q = (1.0 - ys) * (1.0 - qrho).sqrt();
        (1.88 * q, (7.0 + 34.0 * q).round() as i32, (16.0 + 26.0 * q).round() as i32)
    };
    let shifted = h > 0.0;
    let h2 = 2.0 * h;
    let mut qlambda = if shifted { h2.powi(kapn) } else { 0.0 };

    let (mut rx, mut ry, mut sx, mut sy) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in (0..=nu).rev() {
        let np1 = f64::from(n + 1);
        let tx = yabs + h + np1 * rx;
        let ty = xabs - np1 * ry;
        let c = 0.5 / (tx * tx + ty * ty);
        rx = c * tx;
        ry = c * ty;
        if shifted && n <= kapn {
            let t = qlambda + sx;
            sx = rx * t - ry * sy;
            sy = ry * t + rx * sy;
            qlambda /= h2;
        }
    }

    let (mut u, v) = if shifted {
        (TWO_OVER_SQRT_PI * sx, TWO_OVER_SQRT_PI * sy)
    } else {
        (TWO_OVER_SQRT_PI * rx, TWO_OVER_SQRT_PI * ry)
    };
    if yabs == 0.0 {
        u = (-xabs * xabs).exp();
    }
    (u, v)
}
