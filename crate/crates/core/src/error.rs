use thiserror::Error;

/// Errors shared by the solver and scan modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Integration step too coarse for the requested parameters.
    #[error("step size {dt} too large: require dt * max(Gamma, 1) < {limit} (got {product})")]
    StepSize { dt: f64, product: f64, limit: f64 },

    /// The integrated profile left its stability disk.
    #[error("non-finite or unstable solution at t = {t}: |G| = {magnitude}")]
    NonFinite { t: f64, magnitude: f64 },

    /// A two-time evaluation outside the solved grid.
    #[error("time {t} outside the solved grid [0, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },

    /// A root finder was given an interval without a sign change.
    #[error("bracketing failure: {0}")]
    Bracket(String),

    /// No boundary root exists for the requested parameters.
    #[error("no root: {0}")]
    NoRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
