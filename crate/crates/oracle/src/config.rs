//! Oracle run configuration and resource guards.

use crate::error::{OracleError, Result};

/// Hard cap on the state-vector dimension exponent.
pub const DIMENSION_CAP_EXP: u32 = 20;

/// Cap on n_sys + m_env for the string-basis expansion (2^{n} strings).
pub const BASIS_CAP_MODES: u32 = 12;

/// Convergence guard threshold: the first-realization response must move by
/// less than this when every Trotter slice is integrated in two half steps.
pub const TROTTER_GUARD_LIMIT: f64 = 1e-3;

/// Exact-diagonalization protocol setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// System Majoranas per party (N).
    pub n_sys: u32,
    /// Environment Majoranas per party (M).
    pub m_env: u32,
    /// System-environment coupling ratio γ = V/J.
    pub gamma: f64,
    /// Teleportation coupling g.
    pub g: f64,
    /// Left insertion time t_L ≥ 0.
    pub t_l: f64,
    /// Right readout time t_R ≥ 0.
    pub t_r: f64,
    /// Trotter slice width.
    pub dt_trotter: f64,
    /// Number of disorder realizations.
    pub n_samples: u32,
    /// Root seed; realization k derives its own stream from (seed, k).
    pub seed: u64,
}

impl OracleConfig {
    /// Symmetric-time configuration (t_L = t_R = t).
    pub fn symmetric(
        n_sys: u32,
        m_env: u32,
        gamma: f64,
        g: f64,
        t: f64,
        dt_trotter: f64,
        n_samples: u32,
        seed: u64,
    ) -> Self {
        Self { n_sys, m_env, gamma, g, t_l: t, t_r: t, dt_trotter, n_samples, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sys < 2 || self.n_sys % 2 != 0 {
            return Err(OracleError::Config(format!(
                "n_sys must be even and >= 2, got {}",
                self.n_sys
            )));
        }
        if self.m_env % 2 != 0 {
            return Err(OracleError::Config(format!(
                "m_env must be even, got {}",
                self.m_env
            )));
        }
        if !(self.gamma >= 0.0) {
            return Err(OracleError::Config(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        if !self.g.is_finite() {
            return Err(OracleError::Config("g must be finite".into()));
        }
        if !(self.t_l >= 0.0 && self.t_r >= 0.0) {
            return Err(OracleError::Config(format!(
                "times must be >= 0, got t_l = {}, t_r = {}",
                self.t_l, self.t_r
            )));
        }
        if !(self.dt_trotter > 0.0) {
            return Err(OracleError::Config(format!(
                "dt_trotter must be > 0, got {}",
                self.dt_trotter
            )));
        }
        if self.n_samples == 0 {
            return Err(OracleError::Config("n_samples must be >= 1".into()));
        }
        Ok(())
    }

    /// Majorana modes per party.
    pub fn modes_per_party(&self) -> u32 {
        self.n_sys + self.m_env
    }

    /// Qubits carried by the two parties together.
    pub fn party_qubits(&self) -> u32 {
        self.modes_per_party()
    }

    /// Guard the two-party state-vector dimension 2^{n_sys+m_env}.
    pub fn check_pair_dimension(&self) -> Result<()> {
        let exp = self.party_qubits();
        if exp > DIMENSION_CAP_EXP {
            return Err(OracleError::DimensionCap { exponent: exp, cap: DIMENSION_CAP_EXP });
        }
        Ok(())
    }

    /// Guard the protocol dimension 2^{n_sys+m_env+2} (parties plus A, Q).
    pub fn check_protocol_dimension(&self) -> Result<()> {
        let exp = self.party_qubits() + 2;
        if exp > DIMENSION_CAP_EXP {
            return Err(OracleError::DimensionCap { exponent: exp, cap: DIMENSION_CAP_EXP });
        }
        Ok(())
    }

    /// Guard the per-party string-basis enumeration.
    pub fn check_basis_size(&self) -> Result<()> {
        let modes = self.modes_per_party();
        if modes > BASIS_CAP_MODES {
            return Err(OracleError::BasisOverflow { modes, cap: BASIS_CAP_MODES });
        }
        Ok(())
    }

    /// Slice counts (n_l, n_r): times are snapped to multiples of the
    /// realized slice width so both legs share slice boundaries.
    pub fn slice_counts(&self) -> (usize, usize) {
        let count = |t: f64| -> usize {
            if t <= 0.0 {
                0
            } else {
                (t / self.dt_trotter).round().max(1.0) as usize
            }
        };
        (count(self.t_l), count(self.t_r))
    }
}
