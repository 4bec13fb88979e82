//! Channel parameters, unit conventions, derived rates, and the regime
//! taxonomy shared by every other module.

use crate::error::{Error, Result};

/// Energy unit: the intra-system coupling J. All public times are measured
/// in units of 1/J.
pub const J_UNIT: f64 = 0.25;

/// Quantum-to-classical transition point γ_q = 3 − 2√2 of the thermodynamic
/// limit, where |𝒦|_max = (1−γ)/2 crosses the negativity threshold √2 − 1.
pub const GAMMA_Q: f64 = 3.0 - 2.0 * std::f64::consts::SQRT_2;

/// Classical-to-no-signal transition point γ_c; coincides with the
/// scrambling transition of the dissipative model.
pub const GAMMA_C: f64 = 1.0;

/// Negativity threshold on |𝒦|: the two-qubit channel state is entangled
/// iff |𝒦| > √2 − 1.
pub const K_THRESHOLD: f64 = std::f64::consts::SQRT_2 - 1.0;

/// Default no-signal cutoff factor: k_max ≤ NS_FACTOR · |g| is classified as
/// no-signal. The scaling is O(g); the factor itself is a labeled heuristic.
pub const NS_FACTOR_DEFAULT: f64 = 2.0;

/// Dimensionless channel parameters of the thermodynamic limit.
///
/// `gamma` is the system-environment coupling ratio V/J and `g` the
/// two-sided teleportation coupling. J is pinned to 1/4 and carries no
/// per-instance state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub gamma: f64,
    pub g: f64,
}

impl ModelParams {
    /// Build a parameter set, validating γ ≥ 0 and |g| ≤ π.
    pub fn new(gamma: f64, g: f64) -> Result<Self> {
        if !(gamma >= 0.0) {
            return Err(Error::Domain(format!("gamma must be >= 0, got {gamma}")));
        }
        if !g.is_finite() || g.abs() > std::f64::consts::PI {
            return Err(Error::Domain(format!("g must satisfy |g| <= pi, got {g}")));
        }
        Ok(Self { gamma, g })
    }

    /// Decay rate Γ = 4(J + V) = 1 + γ in units of J.
    pub fn big_gamma(&self) -> f64 {
        1.0 + self.gamma
    }

    /// Lyapunov exponent ϰ = 1 − γ; vanishes at the scrambling transition.
    pub fn kappa(&self) -> f64 {
        1.0 - self.gamma
    }

    /// The environment coupling V = γ J in energy units.
    pub fn v_coupling(&self) -> f64 {
        self.gamma * J_UNIT
    }
}

/// Decay rate and Lyapunov exponent (Γ, ϰ) = (1 + γ, 1 − γ).
pub fn derived_rates(params: &ModelParams) -> (f64, f64) {
    (params.big_gamma(), params.kappa())
}

/// The two transition points (γ_q, γ_c) = (3 − 2√2, 1).
pub fn critical_points() -> (f64, f64) {
    (GAMMA_Q, GAMMA_C)
}

/// Teleportation performance regime, ordered Quantum > Classical > NoSignal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    NoSignal,
    Classical,
    Quantum,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Quantum => "quantum",
            Regime::Classical => "classical",
            Regime::NoSignal => "no-signal",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Uniform time grid on [0, t_max] with n_steps · dt = t_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    /// Grid from a total time and step count.
    pub fn new(t_max: f64, n_steps: usize) -> Result<Self> {
        if !(t_max > 0.0) {
            return Err(Error::Domain(format!("t_max must be > 0, got {t_max}")));
        }
        if n_steps == 0 {
            return Err(Error::Domain("n_steps must be >= 1".into()));
        }
        Ok(Self { t_max, dt: t_max / n_steps as f64, n_steps })
    }

    /// Grid from a total time and target step size; n_steps is rounded up so
    /// the realized dt never exceeds the request.
    pub fn from_dt(t_max: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("dt must be > 0, got {dt}")));
        }
        let n_steps = (t_max / dt).ceil().max(1.0) as usize;
        Self::new(t_max, n_steps)
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Number of stored samples, including both endpoints.
    pub fn n_points(&self) -> usize {
        self.n_steps + 1
    }

    /// Time of the i-th grid point.
    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.dt
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rates_closed_system() {
        let p = ModelParams::new(0.0, 0.01).unwrap();
        assert_eq!(derived_rates(&p), (1.0, 1.0));
    }

    #[test]
    fn rates_at_scrambling_transition() {
        // Vanishing exponent at the critical point.
        let p = ModelParams::new(1.0, 0.01).unwrap();
        assert_eq!(derived_rates(&p), (2.0, 0.0));
    }

    #[test]
    fn rates_generic() {
        let p = ModelParams::new(0.4, 0.01).unwrap();
        let (gamma_rate, kappa) = derived_rates(&p);
        assert_relative_eq!(gamma_rate, 1.4, max_relative = 1e-15);
        assert_relative_eq!(kappa, 0.6, max_relative = 1e-15);
    }

    #[test]
    fn rate_sum_identity() {
        // Γ + ϰ = 2: exact for dyadic γ, one ulp otherwise.
        for i in 0..128 {
            let gamma = i as f64 / 64.0;
            let p = ModelParams::new(gamma, 0.0).unwrap();
            let (a, b) = derived_rates(&p);
            assert_eq!(a + b, 2.0);
        }
        for i in 0..200 {
            let gamma = i as f64 * 0.017;
            let p = ModelParams::new(gamma, 0.0).unwrap();
            let (a, b) = derived_rates(&p);
            assert!((a + b - 2.0).abs() <= 2.0 * f64::EPSILON * (1.0 + gamma));
        }
    }

    #[test]
    fn critical_point_values() {
        let (gq, gc) = critical_points();
        assert_relative_eq!(gq, 0.17157287525381, epsilon = 1e-12);
        assert_eq!(gc, 1.0);
        // Defining relation: (1 - γ_q)/2 = √2 - 1 to machine precision.
        assert!(((1.0 - gq) / 2.0 - K_THRESHOLD).abs() < 1e-15);
    }

    #[test]
    fn regime_ordering() {
        assert!(Regime::Quantum > Regime::Classical);
        assert!(Regime::Classical > Regime::NoSignal);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ModelParams::new(-0.1, 0.0).is_err());
        assert!(ModelParams::new(0.1, 4.0).is_err());
        assert!(ModelParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn grid_consistency() {
        let grid = TimeGrid::from_dt(15.0, 1e-3).unwrap();
        assert_eq!(grid.n_steps(), 15000);
        assert_relative_eq!(grid.dt() * grid.n_steps() as f64, grid.t_max());
        assert!(TimeGrid::new(0.0, 1).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
    }
}
