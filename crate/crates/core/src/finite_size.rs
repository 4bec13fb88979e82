//! Long-time finite-N corrections: the partial-transpose eigenvalue pair
//! ε±(r, g, N), its phase-boundary roots, and the largest-γ* algebraic
//! condition bounding the anomalously enhanced quantum regime.
//!
//! The plateau parameter r is treated as an explicit input; boundary curves
//! are emitted in the (r, g) plane.

use crate::error::{Error, Result};

/// Inputs of the long-time eigenvalue formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteSizeParams {
    /// Dimensionless plateau parameter.
    pub r: f64,
    /// Teleportation coupling.
    pub g: f64,
    /// System Majoranas per party.
    pub n_fermions: u32,
}

impl FiniteSizeParams {
    pub fn new(r: f64, g: f64, n_fermions: u32) -> Result<Self> {
        if n_fermions < 2 || n_fermions % 2 != 0 {
            return Err(Error::Domain(format!(
                "n_fermions must be even and >= 2, got {n_fermions}"
            )));
        }
        Ok(Self { r, g, n_fermions })
    }

    /// Oscillation phase θ = (1 − r) g N / 2.
    pub fn theta(&self) -> f64 {
        (1.0 - self.r) * self.g * self.n_fermions as f64 / 2.0
    }
}

/// The two partial-transpose eigenvalues that can dip negative in the
/// long-time limit:
/// ε± = (1/8)[1 − (r−2)r + (1−r)² cos θ ± (r²−1) sin θ].
pub fn epsilon_pm(fsp: &FiniteSizeParams) -> (f64, f64) {
    epsilon_pm_at_theta(fsp.r, fsp.theta())
}

/// Same formula with the phase supplied directly.
pub fn epsilon_pm_at_theta(r: f64, theta: f64) -> (f64, f64) {
    let base = 1.0 - (r - 2.0) * r;
    let cos_amp = (1.0 - r).powi(2);
    let sin_amp = r * r - 1.0;
    let plus = (base + cos_amp * theta.cos() + sin_amp * theta.sin()) / 8.0;
    let minus = (base + cos_amp * theta.cos() - sin_amp * theta.sin()) / 8.0;
    (plus, minus)
}

/// Minimum of ε± over the phase θ and both branches:
/// (1/8)[1 − (r−2)r − √((1−r)⁴ + (r²−1)²)].
pub fn min_epsilon_over_phase(r: f64) -> f64 {
    let base = 1.0 - (r - 2.0) * r;
    let amplitude = ((1.0 - r).powi(4) + (r * r - 1.0).powi(2)).sqrt();
    (base - amplitude) / 8.0
}

/// Largest γ on the ε± = 0 phase boundary, from the algebraic condition
/// 1 + (2−γ)γ = (1−γ)√(5 + 6γ + 5γ²), solved by bisection on [0, 1).
pub fn gamma_star(tol: f64) -> Result<f64> {
    if tol < 1e-12 {
        return Err(Error::Domain(format!("tolerance must be >= 1e-12, got {tol}")));
    }
    let f = |gamma: f64| {
        1.0 + (2.0 - gamma) * gamma
            - (1.0 - gamma) * (5.0 + 6.0 * gamma + 5.0 * gamma * gamma).sqrt()
    };
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-12);
    if f(lo) >= 0.0 || f(hi) <= 0.0 {
        return Err(Error::Bracket(
            "gamma* condition does not change sign on [0, 1)".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest θ > 0 at which either branch of ε± touches zero, or None when
/// the phase-minimum stays positive.
fn first_zero_theta(r: f64) -> Option<f64> {
    if min_epsilon_over_phase(r) > 0.0 {
        return None;
    }
    // Scan one full period, then bisect the first bracketed crossing of
    // the branch minimum.
    let min_eps = |theta: f64| {
        let (p, m) = epsilon_pm_at_theta(r, theta);
        p.min(m)
    };
    let steps = 20_000;
    let mut prev = min_eps(0.0);
    if prev <= 0.0 {
        return Some(0.0);
    }
    for i in 1..=steps {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / steps as f64;
        let cur = min_eps(theta);
        if cur <= 0.0 {
            let mut lo = 2.0 * std::f64::consts::PI * (i - 1) as f64 / steps as f64;
            let mut hi = theta;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if min_eps(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = cur;
    }
    let _ = prev;
    None
}

/// Phase-boundary samples in the (r, g) plane: for each r the smallest
/// g > 0 with min(ε+, ε−) = 0, via θ roots mapped through
/// g = 2θ / ((1−r) N).
pub fn boundary_curve(r_samples: &[f64], n_fermions: u32) -> Result<Vec<(f64, f64)>> {
    if n_fermions < 2 || n_fermions % 2 != 0 {
        return Err(Error::Domain(format!(
            "n_fermions must be even and >= 2, got {n_fermions}"
        )));
    }
    let mut out = Vec::with_capacity(r_samples.len());
    for &r in r_samples {
        if !(-1.0 < r && r < 1.0) {
            return Err(Error::Domain(format!("r samples must lie in (-1, 1), got {r}")));
        }
        let theta0 = first_zero_theta(r).ok_or_else(|| {
            Error::NoRoot(format!(
                "epsilon stays positive for all phases at r = {r} (min = {})",
                min_epsilon_over_phase(r)
            ))
        })?;
        let g_boundary = 2.0 * theta0 / ((1.0 - r) * n_fermions as f64);
        out.push((r, g_boundary));
    }
    Ok(out)
}
