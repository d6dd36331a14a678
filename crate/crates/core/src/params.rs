//! Physical parameters, all dimensionless in units of the switching width.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Single-detector parameters: energy gap `Omega*sigma` (negative for a
/// detector that starts excited) and coupling `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams {
    pub gap: f64,
    pub coupling: f64,
}

impl DetectorParams {
    pub fn new(gap: f64, coupling: f64) -> Result<Self> {
        if !gap.is_finite() {
            return Err(Error::InvalidInput(format!("gap must be finite, got {gap}")));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::InvalidInput(format!("coupling must be positive, got {coupling}")));
        }
        Ok(DetectorParams { gap, coupling })
    }

    pub(crate) fn lambda_sq(&self) -> f64 {
        self.coupling * self.coupling
    }
}

/// Separation `S/sigma` between the detectors and delay `T/sigma` between
/// their switchings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    pub separation: f64,
    pub delay: f64,
}

impl PairGeometry {
    pub fn new(separation: f64, delay: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::InvalidInput(format!("separation must be positive, got {separation}")));
        }
        if !(delay.is_finite() && delay >= 0.0) {
            return Err(Error::InvalidInput(format!("delay must be non-negative, got {delay}")));
        }
        Ok(PairGeometry { separation, delay })
    }

    pub fn separated(separation: f64) -> Result<Self> {
        Self::new(separation, 0.0)
    }
}

/// Hard momentum cutoff `Lambda*sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandlimit {
    Finite(f64),
    Infinite,
}

impl Bandlimit {
    pub fn finite(value: f64) -> Result<Self> {
        if value == f64::INFINITY {
            return Ok(Bandlimit::Infinite);
        }
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidInput(format!("bandlimit must be non-negative, got {value}")));
        }
        Ok(Bandlimit::Finite(value))
    }

    /// The cutoff as a float, `f64::INFINITY` for no cutoff.
    pub fn value(&self) -> f64 {
        match *self {
            Bandlimit::Finite(v) => v,
            Bandlimit::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bandlimit::Infinite)
    }

    pub(crate) fn require_finite(&self, what: &str) -> Result<f64> {
        match *self {
            Bandlimit::Finite(v) => Ok(v),
            Bandlimit::Infinite => Err(Error::InvalidInput(format!("{what} needs a finite bandlimit"))),
        }
    }
}

impl fmt::Display for Bandlimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bandlimit::Finite(v) => write!(f, "{v}"),
            Bandlimit::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Bandlimit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Bandlimit::Infinite);
        }
        let v: f64 = t.parse().map_err(|_| Error::InvalidInput(format!("cannot parse bandlimit '{s}'")))?;
        Bandlimit::finite(v)
    }
}

/// Width `a/sigma` of a Gaussian spatial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub width: f64,
}

impl GaussianProfile {
    pub fn new(width: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidInput(format!("profile width must be positive, got {width}")));
        }
        Ok(GaussianProfile { width })
    }
}
