use alloc::string::String;

/// Errors raised by the model, statics, fatigue and cohort routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension `{name}`: {value} (must be positive and finite)")]
    InvalidDimension { name: String, value: f64 },
    #[error("dimension mismatch: expected {expected} values, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid capacity state: {value} N·m outside (0, {max}]")]
    InvalidState { value: f64, max: f64 },
    #[error("invalid load {0} N·m (must be finite and non-negative)")]
    InvalidLoad(f64),
    #[error("invalid strength {0} N·m (must be positive)")]
    InvalidStrength(f64),
    #[error("invalid fatigue parameter `{name}`: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("no strength configured for joint `{0}`")]
    MissingStrength(String),
    #[error("unknown segment `{0}`")]
    UnknownSegment(String),
    #[error("unknown joint `{0}`")]
    UnknownJoint(String),
    #[error("degenerate level for factor `{factor}`: {value} (levels must be positive)")]
    DegenerateLevel { factor: &'static str, value: f64 },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("required endurance {required} s exceeds simulated horizon {horizon} s")]
    UnderSpecifiedTask { required: f64, horizon: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
