use thiserror::Error;

use crate::wav::WavError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("frequency {highest_hz} Hz is at or above the Nyquist limit of {nyquist_hz} Hz")]
    NyquistViolation { highest_hz: f64, nyquist_hz: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("signal shorter than segment: {n_samples} samples < nperseg {nperseg}")]
    SignalTooShort { n_samples: usize, nperseg: usize },

    #[error("grid unit is {found:?}, expected {expected:?}")]
    UnitMismatch {
        expected: crate::signal::GridUnit,
        found: crate::signal::GridUnit,
    },

    #[error(transparent)]
    Wav(#[from] WavError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
