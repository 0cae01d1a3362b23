use thiserror::Error;

use crate::numerics::NonConvergence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The two QWZ bands touch somewhere in the Brillouin zone.
    #[error("band touching: model with u/t = {u_over_t} is gapless")]
    BandTouching { u_over_t: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(Box<NonConvergence>),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<NonConvergence> for Error {
    fn from(value: NonConvergence) -> Self {
        Error::Quadrature(Box::new(value))
    }
}
