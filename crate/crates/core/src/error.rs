use thiserror::Error;

use crate::params::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("invalid parameters: {}", .0.warnings.join("; "))]
    InvalidParams(ValidationReport),

    #[error("steady-state intensity is zero (epsilon = 0 and r = 0); g2 is undefined")]
    DegenerateIntensity,

    #[error("negative time or delay {0}")]
    NegativeTime(f64),

    #[error("integration failed at t = {t}: step size {step:e} underflowed")]
    StepUnderflow { t: f64, step: f64 },

    #[error("integration exceeded {0} steps")]
    TooManySteps(usize),

    #[error("time grid must be non-empty, start at 0 and be non-decreasing")]
    BadTimeGrid,

    #[error(
        "Fourier window {window} too short: correlator envelope is {ratio:e} of its initial value (need <= {limit:e})"
    )]
    WindowTooShort { window: f64, ratio: f64, limit: f64 },

    #[error("Fock truncation tail mass {mass:e} at t = {t} exceeds {limit:e}")]
    TruncationTail { mass: f64, t: f64, limit: f64 },

    #[error("Fock dimensions must be >= 2 (got cavity {cavity}, exciton {exciton})")]
    FockDims { cavity: usize, exciton: usize },

    #[error("excitation manifold must be 1 or 2 (got {0})")]
    Manifold(u8),
}
