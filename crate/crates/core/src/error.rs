use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("could not isolate root #{index}: scan reached x = {scanned_to}")]
    BracketFailure { index: usize, scanned_to: f64 },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    NonConvergence { estimate: f64, error: f64 },

    #[error("series overflow: {0}")]
    Overflow(String),

    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("Fock truncation leaves weight {tail:e} above bound {bound:e}")]
    Truncation { tail: f64, bound: f64 },

    #[error("recurrence guard violated: t_end = {t_end} but recurrence at {recurrence}")]
    RecurrenceGuard { t_end: f64, recurrence: f64 },

    #[error("point outside the cavity: {0}")]
    OutsideCavity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name,
        reason: reason.into(),
    }
}
