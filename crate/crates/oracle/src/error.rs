use thiserror::Error;

/// Failures of the exact state-vector oracle.
#[derive(Debug, Clone, Error)]
pub enum OracleError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(
        "Hilbert dimension 2^{exponent} exceeds the 2^{cap} resource cap for this mode"
    )]
    DimensionCap { exponent: u32, cap: u32 },

    #[error(
        "string basis needs n_sys + m_env <= {cap} Majorana modes per party, got {modes}"
    )]
    BasisOverflow { modes: u32, cap: u32 },

    #[error("EPR construction failed: {0}")]
    Degeneracy(String),

    #[error(
        "Trotter convergence guard tripped: halving dt changed the first-realization \
         response by {delta:.3e} (limit {limit:.1e})"
    )]
    Trotter { delta: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, OracleError>;
