use thiserror::Error;

/// Errors raised by the algebraic and numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A value expected to carry an overall factor of iħ did not.
    #[error("not divisible by i*hb: term {0} has no factor of hb")]
    Divisibility(String),

    #[error("not splittable: {0}")]
    NotSplittable(String),

    #[error("irrational eigenvalue: {0} has no exact square root; evaluate at a rational point first")]
    IrrationalEigenvalue(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integration diverged at s = {s}")]
    IntegrationDiverged {
        s: f64,
        last: Box<crate::mechanics::Sample>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
