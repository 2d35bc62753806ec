use thiserror::Error;

use crate::classify::RegionLabel;
use crate::delta::NoDeltaShock;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid gas law: {0}")]
    GasLaw(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("no delta shock: {0}")]
    NoDeltaShock(NoDeltaShock),

    #[error("no measure solution in region {region}: {reason}")]
    NoMeasureSolution { region: RegionLabel, reason: String },

    #[error("root finding failed: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
