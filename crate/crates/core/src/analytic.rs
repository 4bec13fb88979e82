//! Closed-form large-N solutions: the diagonal profile 𝒢(t), the two-time
//! Wightman function, the response 𝒦, and the peak law |𝒦|_max = (1−γ)/2.
//!
//! The closed forms are the |g| ≪ 1 solutions of the Schwinger-Dyson
//! equation; the numerical solver in [`crate::sd`] is the arbiter at
//! moderate g.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ModelParams, TimeGrid};

/// Width of the critical window around γ = 1 in which the dedicated
/// critical-line formula replaces the generic closed form.
pub const CRITICAL_WIDTH: f64 = 1e-12;

/// Exponent cap: for (1−γ)t beyond this the generic formula is evaluated in
/// its large-t limit to stay inside the double-precision exponent range.
const EXP_ARG_MAX: f64 = 700.0;

/// Which closed-form branch applies at a given γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// γ ≠ 1.
    Generic,
    /// The critical line γ = 1, where the exponential solution degenerates
    /// into a power law.
    Critical,
}

/// Branch selection: critical iff |γ − 1| < [`CRITICAL_WIDTH`].
pub fn branch_for(gamma: f64) -> Branch {
    if (gamma - 1.0).abs() < CRITICAL_WIDTH {
        Branch::Critical
    } else {
        Branch::Generic
    }
}

/// Diagonal profile 𝒢(t) sampled on a grid.
#[derive(Debug, Clone)]
pub struct DiagonalProfile {
    pub samples: Vec<(f64, Complex64)>,
    pub branch: Branch,
}

impl DiagonalProfile {
    /// Value at grid index i.
    pub fn value(&self, i: usize) -> Complex64 {
        self.samples[i].1
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest sampled time.
    pub fn t_max(&self) -> f64 {
        self.samples.last().map(|s| s.0).unwrap_or(0.0)
    }
}

/// Diagonal Wightman profile 𝒢(t).
///
/// Generic branch: 𝒢(t) = γ + (1−γ)² / (1−γ + i g e^{(1−γ)t}).
/// Critical branch: 𝒢(t) = 1 − (g²t + i g) / (1 + g²t²).
pub fn cal_g(t: f64, params: &ModelParams) -> Result<Complex64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    let g = params.g;
    match branch_for(params.gamma) {
        Branch::Critical => {
            let den = 1.0 + g * g * t * t;
            Ok(Complex64::new(1.0 - g * g * t / den, -g / den))
        }
        Branch::Generic => {
            let eps = 1.0 - params.gamma;
            if eps * t > EXP_ARG_MAX {
                // e^{(1-γ)t} dominates the denominator and 𝒢 -> γ.
                return Ok(Complex64::new(params.gamma, 0.0));
            }
            let den = Complex64::new(eps, g * (eps * t).exp());
            Ok(Complex64::new(params.gamma, 0.0) + eps * eps / den)
        }
    }
}

/// Equal-time response 𝒦(t,t) = Im 𝒢(t).
///
/// Generic branch: 𝒦(t,t) = −g (1−γ)² e^{(1−γ)t} / (g² e^{2(1−γ)t} + (1−γ)²);
/// critical branch: 𝒦(t,t) = −g / (1 + g²t²).
pub fn response_diag(t: f64, params: &ModelParams) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    let g = params.g;
    match branch_for(params.gamma) {
        Branch::Critical => Ok(-g / (1.0 + g * g * t * t)),
        Branch::Generic => {
            let eps = 1.0 - params.gamma;
            let half_arg = eps * t;
            if half_arg > EXP_ARG_MAX / 2.0 {
                // -(ε²/g) e^{-(1-γ)t}, evaluated without forming e^{2(1-γ)t}.
                if g == 0.0 {
                    return Ok(0.0);
                }
                return Ok(-(eps * eps / g) * (-half_arg).exp());
            }
            let e = half_arg.exp();
            Ok(-g * eps * eps * e / (g * g * e * e + eps * eps))
        }
    }
}

/// Off-diagonal response 𝒦(t_L, t_R) = e^{−Γ|t_L−t_R|/2} · Im 𝒢(min{t_L,t_R}).
pub fn response_offdiag(t_l: f64, t_r: f64, params: &ModelParams) -> Result<f64> {
    if !(t_l >= 0.0) || !(t_r >= 0.0) {
        return Err(Error::Domain(format!(
            "times must be >= 0, got ({t_l}, {t_r})"
        )));
    }
    let decay = (-params.big_gamma() * (t_l - t_r).abs() / 2.0).exp();
    Ok(decay * response_diag(t_l.min(t_r), params)?)
}

/// Peak response magnitude and its location.
///
/// For γ < 1 and |g| < 1−γ the peak sits at finite t_* with
/// |g| e^{(1−γ)t_*} = 1−γ and |𝒦|_max = (1−γ)/2; otherwise the maximum is
/// |𝒦(0,0)| at t = 0.
pub fn kmax_and_tstar(params: &ModelParams) -> Result<(f64, f64)> {
    if params.g == 0.0 {
        return Err(Error::Domain("kmax is undefined at g = 0".into()));
    }
    let eps = 1.0 - params.gamma;
    if eps > 0.0 && params.g.abs() < eps {
        let t_star = (eps / params.g.abs()).ln() / eps;
        Ok((eps / 2.0, t_star))
    } else {
        Ok((response_diag(0.0, params)?.abs(), 0.0))
    }
}

/// Sample 𝒢 on a grid.
pub fn sample_profile(params: &ModelParams, grid: &TimeGrid) -> Result<DiagonalProfile> {
    let mut samples = Vec::with_capacity(grid.n_points());
    for i in 0..grid.n_points() {
        let t = grid.time(i);
        samples.push((t, cal_g(t, params)?));
    }
    Ok(DiagonalProfile { samples, branch: branch_for(params.gamma) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(gamma: f64, g: f64) -> ModelParams {
        ModelParams::new(gamma, g).unwrap()
    }

    #[test]
    fn cal_g_at_zero_generic() {
        // γ + (1-γ)²/(1-γ+ig) evaluated by direct complex arithmetic.
        let v = cal_g(0.0, &params(0.5, 0.01)).unwrap();
        assert_relative_eq!(v.re, 0.99980007996801, epsilon = 1e-12);
        assert_relative_eq!(v.im, -0.00999600159936, epsilon = 1e-12);
    }

    #[test]
    fn cal_g_long_time_limit() {
        let p = params(0.5, 0.01);
        let v = cal_g(200.0, &p).unwrap();
        assert!((v - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        // Far past the exponent cap the limit is returned directly.
        let v = cal_g(5000.0, &p).unwrap();
        assert_eq!(v, Complex64::new(0.5, 0.0));
    }

    #[test]
    fn cal_g_critical_imaginary_part() {
        let v = cal_g(0.0, &params(1.0, 0.01)).unwrap();
        assert_relative_eq!(v.im, -0.01, epsilon = 1e-15);
        // Along the critical line Im 𝒢 = -g/(1+g²t²).
        let v = cal_g(30.0, &params(1.0, 0.01)).unwrap();
        assert_relative_eq!(v.im, -0.01 / (1.0 + 0.09), epsilon = 1e-15);
    }

    #[test]
    fn response_matches_im_cal_g() {
        for &gamma in &[0.0, 0.1, 0.4, 0.9, 1.0, 1.1, 2.5] {
            for &g in &[-0.05, 0.001, 0.01, 0.3] {
                let p = params(gamma, g);
                for i in 0..60 {
                    let t = 0.25 * i as f64;
                    let k = response_diag(t, &p).unwrap();
                    let im = cal_g(t, &p).unwrap().im;
                    assert!((k - im).abs() < 1e-14, "gamma={gamma} g={g} t={t}");
                }
            }
        }
    }

    #[test]
    fn response_rational_point() {
        // -g ε²/(g² + ε²) at t = 0, γ = 1.1: -0.0001/0.0101.
        let k = response_diag(0.0, &params(1.1, 0.01)).unwrap();
        assert_relative_eq!(k, -0.0001 / 0.0101, epsilon = 1e-15);
    }

    #[test]
    fn response_zero_coupling() {
        assert_eq!(response_diag(7.0, &params(0.3, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn response_peak_value() {
        // At t_* the magnitude reaches (1-γ)/2.
        let p = params(0.1, 0.01);
        let (kmax, tstar) = kmax_and_tstar(&p).unwrap();
        assert_relative_eq!(kmax, 0.45, epsilon = 1e-14);
        assert_relative_eq!(tstar, (90.0f64).ln() / 0.9, epsilon = 1e-12);
        let k = response_diag(tstar, &p).unwrap();
        assert_relative_eq!(k, -0.45, epsilon = 1e-12);
    }

    #[test]
    fn kmax_examples() {
        let (kmax, tstar) = kmax_and_tstar(&params(0.4, 0.01)).unwrap();
        assert_relative_eq!(kmax, 0.3, epsilon = 1e-14);
        assert_relative_eq!(tstar, (60.0f64).ln() / 0.6, epsilon = 1e-12);

        let (kmax, tstar) = kmax_and_tstar(&params(1.1, 0.01)).unwrap();
        assert_relative_eq!(kmax, 0.0001 / 0.0101, epsilon = 1e-12);
        assert_eq!(tstar, 0.0);

        assert!(kmax_and_tstar(&params(0.4, 0.0)).is_err());
    }

    #[test]
    fn kmax_agrees_with_grid_search() {
        for &gamma in &[0.1, 0.4, 0.7] {
            let p = params(gamma, 0.01);
            let (kmax, tstar) = kmax_and_tstar(&p).unwrap();
            let dt = 1e-3;
            let mut best: f64 = 0.0;
            let mut t = 0.0;
            while t <= 3.0 * tstar {
                best = best.max(response_diag(t, &p).unwrap().abs());
                t += dt;
            }
            assert!((best - kmax).abs() < 1e-5, "gamma={gamma}");
        }
    }

    #[test]
    fn offdiag_decay() {
        let p = params(0.1, 0.01);
        // Zero separation reproduces the diagonal.
        assert_eq!(
            response_offdiag(3.0, 3.0, &p).unwrap(),
            response_diag(3.0, &p).unwrap()
        );
        // Separation 2 ln2 / Γ halves the response.
        let delta = 2.0 * (2.0f64).ln() / p.big_gamma();
        let k = response_offdiag(5.0, 5.0 + delta, &p).unwrap();
        assert_relative_eq!(k, response_diag(5.0, &p).unwrap() / 2.0, epsilon = 1e-12);
        // Large separation kills it.
        assert!(response_offdiag(1.0, 400.0, &p).unwrap().abs() < 1e-90);
    }

    #[test]
    fn offdiag_example_gamma_03() {
        let p = params(0.3, 0.01);
        let expected = (-1.3f64 * 2.0).exp() * response_diag(2.0, &p).unwrap();
        assert_relative_eq!(response_offdiag(2.0, 6.0, &p).unwrap(), expected, epsilon = 1e-13);
    }

    #[test]
    fn negative_time_rejected() {
        let p = params(0.5, 0.01);
        assert!(cal_g(-0.1, &p).is_err());
        assert!(response_diag(-1.0, &p).is_err());
        assert!(response_offdiag(-1.0, 1.0, &p).is_err());
        assert!(response_offdiag(1.0, -1.0, &p).is_err());
    }

    #[test]
    fn monotone_decay_above_transition() {
        // For γ > 1 (and |g| < γ-1) the response magnitude never grows.
        let p = params(1.1, 0.01);
        let mut prev = response_diag(0.0, &p).unwrap().abs();
        for i in 1..2000 {
            let k = response_diag(i as f64 * 0.01, &p).unwrap().abs();
            assert!(k <= prev + 1e-15);
            prev = k;
        }
    }

    #[test]
    fn single_extremum_below_transition() {
        // One interior extremum of Im 𝒢 for γ < 1, |g| < 1-γ.
        let p = params(0.3, 0.01);
        let dt = 1e-2;
        let n = 3000;
        let mut flips = 0;
        let mut prev_slope = 0.0f64;
        for i in 1..n {
            let a = response_diag((i - 1) as f64 * dt, &p).unwrap();
            let b = response_diag(i as f64 * dt, &p).unwrap();
            let slope = b - a;
            if slope * prev_slope < 0.0 {
                flips += 1;
            }
            if slope != 0.0 {
                prev_slope = slope;
            }
        }
        assert_eq!(flips, 1);
    }

    #[test]
    fn profile_bounded() {
        // The asymptotic closed forms overshoot the unit disk by O(g²) for
        // γ <= 1 and by O((g/(1-γ))²) above it; the bound is checked with
        // exactly that allowance.
        let grid = TimeGrid::from_dt(30.0, 1e-2).unwrap();
        let g = 0.05;
        for &gamma in &[0.0f64, 0.1, 0.5, 1.0, 1.3] {
            let slack = if gamma <= 1.0 {
                g * g
            } else {
                (g / (1.0 - gamma)).powi(2)
            };
            let profile = sample_profile(&params(gamma, g), &grid).unwrap();
            for &(_, v) in &profile.samples {
                assert!(
                    v.norm() <= 1.0 + slack,
                    "gamma={gamma} |G|={}",
                    v.norm()
                );
            }
        }
    }

    #[test]
    fn critical_seam_agreement() {
        // The generic and critical branches agree near γ = 1 only when
        // |g| << |1-γ|; probe the seam well inside that window.
        let g = 1e-8;
        for &gamma in &[1.0 - 1e-6, 1.0 + 1e-6] {
            let p = params(gamma, g);
            let crit = params(1.0, g);
            for i in 0..100 {
                let t = 0.1 * i as f64;
                let a = response_diag(t, &p).unwrap();
                let b = response_diag(t, &crit).unwrap();
                assert!((a - b).abs() < 1e-4);
                // Non-vacuous version: relative agreement to O(|1-γ|·t).
                assert!((a - b).abs() <= 1e-3 * b.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn ode_identity_of_closed_form() {
        // Independent check that the closed form solves
        // d𝒢/dt = -(𝒢-γ)(1-𝒢): Richardson-extrapolated central differences.
        for &(gamma, g) in &[(0.1, 0.01), (0.5, 0.05), (1.0, 0.01), (1.3, 0.02)] {
            let p = params(gamma, g);
            for j in 1..40 {
                let t = 0.25 * j as f64;
                let d = |h: f64| {
                    (cal_g(t + h, &p).unwrap() - cal_g(t - h, &p).unwrap()) / (2.0 * h)
                };
                let h = 1e-2;
                let d1 = d(h);
                let d2 = d(h / 2.0);
                let deriv = (Complex64::new(4.0, 0.0) * d2 - d1) / 3.0;
                let gval = cal_g(t, &p).unwrap();
                let rhs = -(gval - gamma) * (Complex64::new(1.0, 0.0) - gval);
                assert!(
                    (deriv - rhs).norm() < 1e-10,
                    "gamma={gamma} g={g} t={t} resid={}",
                    (deriv - rhs).norm()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn response_is_odd_in_g(gamma in 0.0f64..2.0, g in 1e-6f64..0.5, t in 0.0f64..20.0) {
            let plus = response_diag(t, &params(gamma, g)).unwrap();
            let minus = response_diag(t, &params(gamma, -g)).unwrap();
            prop_assert!((plus + minus).abs() < 1e-15);
        }

        #[test]
        fn response_bounded_by_one(gamma in 0.0f64..3.0, g in -3.0f64..3.0, t in 0.0f64..50.0) {
            // The critical-line asymptotic form obeys the unit bound only for
            // |g| <= 1, so keep the generic branch away from the seam.
            prop_assume!((gamma - 1.0).abs() > 1e-9);
            let k = response_diag(t, &params(gamma, g)).unwrap();
            prop_assert!(k.abs() <= 1.0 + 1e-12);
        }

        #[test]
        fn critical_response_bounded_for_small_g(g in -1.0f64..1.0, t in 0.0f64..50.0) {
            let k = response_diag(t, &params(1.0, g)).unwrap();
            prop_assert!(k.abs() <= 1.0 + 1e-12);
        }
    }
}
