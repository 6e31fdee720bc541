use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is out of domain: {reason}")]
    ParameterDomain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("stationary residue; t→∞ limit undefined (decay exponent real part {exponent_re:e})")]
    NonDecaying { exponent_re: f64 },

    #[error("projection has zero probability; post-BSM state undefined")]
    ZeroProjection,

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("requested accuracy not reached: estimate {estimate} with error {error:e} (target {target:e})")]
    Accuracy {
        estimate: f64,
        error: f64,
        target: f64,
    },

    #[error("invalid solver settings: {0}")]
    Settings(String),

    #[error("insufficient reservoir resolution: {0}")]
    Resolution(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("joint state is not normalized (deviation {deviation:e})")]
    Normalization { deviation: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
