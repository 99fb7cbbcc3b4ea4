use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be finite, got {0}")]
    NonFinite(f64),
    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("noise variance must be positive and finite, got {0}")]
    InvalidNoiseVariance(f64),
    #[error("antenna count {m} outside supported range [{min}, {max}]")]
    AntennaCount { m: usize, min: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid signal vector: {0}")]
    InvalidSignal(&'static str),
    #[error("power budget {pt} outside feasible range [{min}, {max}]")]
    PowerBudget { pt: f64, min: f64, max: f64 },
    #[error("distribution sums to {0}, expected 1")]
    NotNormalized(f64),
    #[error("distribution has a negative or non-finite mass {0}")]
    InvalidMass(f64),
    #[error("operation requires a single-antenna channel, got M = {0}")]
    RequiresSiso(usize),
    #[error("subset ({u}, {k}) does not exist for this constellation")]
    UnknownSubset { u: usize, k: usize },
    #[error("feedback word {0} does not index a subset")]
    UnknownFeedbackWord(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
