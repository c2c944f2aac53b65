use thiserror::Error;

/// Errors raised by the group-theoretic and harmonic-analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The caller passed something outside an operation's domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A quantity that must be an exact non-negative integer was not.
    ///
    /// This signals a bug or a numerical breakdown, never bad input.
    #[error("consistency failure in {context}: value {value} is not a non-negative integer (residual {residual:e})")]
    NonIntegral {
        context: String,
        value: f64,
        residual: f64,
    },

    /// An internal cross-check between two computation routes failed.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for errors that indicate an internal inconsistency rather than bad input.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::NonIntegral { .. } | Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rounds `value` to the nearest non-negative integer when it lies within `tol`.
pub(crate) fn round_count(value: f64, tol: f64, context: &str) -> Result<u64> {
    let rounded = value.round();
    let residual = (value - rounded).abs();
    if residual > tol || rounded < 0.0 {
        return Err(Error::NonIntegral {
            context: context.to_string(),
            value,
            residual,
        });
    }
    Ok(rounded as u64)
}
