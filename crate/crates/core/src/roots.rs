//! Scalar root finding and maximisation.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Root of `f` on `[lo, hi]` by bisection, to bracket width `xtol`.
pub fn bisect<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    if fa == 0.0 {
        return Ok(a);
    }
    let fb = f(b)?;
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > xtol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Maximiser of a unimodal `f` on `[lo, hi]` by golden-section search.
///
/// Fails when the best point found lies at either end of the interval.
pub fn golden_max<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    let edge = 1e3 * xtol.max(f64::EPSILON * (lo.abs() + hi.abs()));
    if x - lo <= edge || hi - x <= edge || fx < f(lo)? || fx < f(hi)? {
        return Err(Error::NoInteriorMaximum { lo, hi });
    }
    Ok(x)
}

/// Grow `[start, start + step * 2^k]` until `f` changes sign at its right
/// end, giving up past `limit`.
pub fn bracket_by_doubling<F>(f: F, start: f64, step: f64, limit: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let f0 = f(start)?;
    let mut lo = start;
    let mut width = step;
    loop {
        let hi = start + width;
        if hi > limit {
            return Err(Error::BracketFailure(format!("no sign change on [{start}, {limit}]")));
        }
        let fh = f(hi)?;
        if fh == 0.0 || fh.signum() != f0.signum() {
            return Ok((lo, hi));
        }
        lo = hi;
        width *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(matches!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-9), Err(Error::NoSignChange { .. })));
        assert_eq!(bisect(|x| Ok(x - 1.0), 1.0, 3.0, 1e-9).unwrap(), 1.0);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let x = golden_max(|x| Ok(-(x - 0.3) * (x - 0.3)), -2.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn golden_rejects_monotone() {
        assert!(matches!(golden_max(Ok, 0.0, 1.0, 1e-9), Err(Error::NoInteriorMaximum { .. })));
    }

    #[test]
    fn doubling_brackets_root() {
        let (lo, hi) = bracket_by_doubling(|x| Ok(x - 37.0), 0.0, 1.0, 1e3).unwrap();
        assert!(lo < 37.0 && hi >= 37.0);
        assert!(bracket_by_doubling(|x| Ok(x + 1.0), 0.0, 1.0, 1e3).is_err());
    }
}
