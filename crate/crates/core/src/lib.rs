//! Unruh-DeWitt detector pairs coupled to a hard-bandlimited massless scalar
//! field in 3+1 dimensions.
//!
//! All quantities are dimensionless in units of the switching width: gaps
//! are `Omega*sigma`, bandlimits `Lambda*sigma`, distances `S/sigma`, and so
//! on. Probabilities and coherences of the perturbative model carry the
//! factor `lambda^2` explicitly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deltaswitch;
pub mod design;
pub mod error;
pub mod params;
pub mod perturbative;
pub mod quadrature;
pub mod roots;
pub mod specfun;
pub mod sweep;
pub mod xstate;

pub use error::{Error, Result};
pub use params::{Bandlimit, DetectorParams, GaussianProfile, PairGeometry};
pub use sweep::{Scale, SweepGrid, SweepResult};
pub use xstate::{negativity_xstate, XStateDensityMatrix};
