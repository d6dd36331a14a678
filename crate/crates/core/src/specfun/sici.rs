use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

/// Power series up to this argument, auxiliary functions beyond.
const SERIES_LIMIT: f64 = 4.0;

/// Sine integral `Si(x) = int_0^x sin(t)/t dt`.
pub fn sine_integral(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT { series(ax) } else { FRAC_PI_2 - auxiliary(ax) };
    v.copysign(x)
}

fn series(x: f64) -> f64 {
    // sum (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..60 {
        let n = (2 * k) as f64;
        term *= -x2 / (n * (n + 1.0));
        let add = term / (n + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `pi/2 - Si(x) = f(x) cos x + g(x) sin x` for `x > 4`, with `f + i g`
/// read off the continued fraction of `E1(ix)`
/// (modified Lentz; converges in a few dozen terms for `x > 2`).
fn auxiliary(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..1000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    // E1(ix) = h * exp(-ix) = -Ci(x) + i (Si(x) - pi/2)
    let e1 = h * Complex64::from_polar(1.0, -x);
    -e1.im
}
