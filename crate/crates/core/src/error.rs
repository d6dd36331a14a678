use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested value does not fit in an `f64`.
    #[error("overflow in {function}: {detail}")]
    Overflow { function: &'static str, detail: String },

    #[error("non-finite argument to {0}")]
    NonFinite(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Adaptive quadrature ran out of its evaluation budget.
    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (estimate {estimate:e}, error {error:e})"
    )]
    NonConvergence { evaluations: usize, estimate: f64, error: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("no interior maximum in [{lo}, {hi}]")]
    NoInteriorMaximum { lo: f64, hi: f64 },

    #[error("could not bracket a root: {0}")]
    BracketFailure(String),

    #[error("found {found} admissible detector pairs, {wanted} requested")]
    InsufficientRoots { wanted: usize, found: usize },
}

impl Error {
    /// True for failures of a numerical procedure (as opposed to bad input).
    pub fn is_computational(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::NonFinite(_))
    }
}
