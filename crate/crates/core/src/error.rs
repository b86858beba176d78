use thiserror::Error;

use crate::design::DesignSolution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("wavelength {wavelength_um} um outside valid range [{min_um}, {max_um}] um")]
    WavelengthOutOfRange {
        wavelength_um: f64,
        min_um: f64,
        max_um: f64,
    },

    #[error("invalid Sellmeier coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("spectrum has no peak: max transmission {t_max:e} is below the detection floor")]
    NoPeak { t_max: f64 },

    #[error("half-maximum crossings are not bracketed by the detuning grid")]
    GridTooNarrow,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("no feasible design under the bandwidth constraint")]
    Infeasible(Box<DesignSolution>),

    #[error("{key}: {message}")]
    Config { key: String, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
