//! Error taxonomy shared by every evaluator.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the validity region of the requested method.
    #[error("OutOfDomain: {parameter} = {value} outside allowed range {allowed}")]
    OutOfDomain {
        parameter: &'static str,
        value: f64,
        allowed: String,
    },
    /// The quantity does not exist, e.g. G(0) for alpha <= 1.
    #[error("Divergent: {0}")]
    Divergent(String),
    /// An iteration cap was hit before the requested tolerance was certified.
    #[error("ToleranceUnreachable: {0}")]
    ToleranceUnreachable(String),
    /// A quadrature or sampler failed to converge or produced non-finite values.
    #[error("NumericalInstability: {0}")]
    NumericalInstability(String),
}

impl Error {
    pub(crate) fn out_of_domain(parameter: &'static str, value: f64, allowed: impl Into<String>) -> Self {
        Error::OutOfDomain {
            parameter,
            value,
            allowed: allowed.into(),
        }
    }

    /// True for misuse errors (domain violations and divergent points).
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::OutOfDomain { .. } | Error::Divergent(_))
    }
}
