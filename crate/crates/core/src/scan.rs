//! Parameter sweeps over (γ, g, t): time traces of the channel metrics,
//! regime classification rows, and transition-point root finding.

use rayon::prelude::*;

use crate::analytic;
use crate::channel::{self, density_from_k};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Regime, TimeGrid, NS_FACTOR_DEFAULT};
use crate::sd;

/// Where the response values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Source {
    /// Closed-form response.
    #[default]
    Analytic,
    /// Diagonal Schwinger-Dyson integration.
    Numeric,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Numeric => "numeric",
        }
    }
}

impl std::str::FromStr for Source {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(Source::Analytic),
            "numeric" => Ok(Source::Numeric),
            other => Err(format!("unknown source '{other}' (use analytic|numeric)")),
        }
    }
}

/// One sample of a diagonal (t_L = t_R = t) trace.
#[derive(Debug, Clone, Copy)]
pub struct TracePoint {
    pub t: f64,
    pub k: f64,
    pub negativity: f64,
    pub mutual_info_ln2: f64,
}

/// Channel metrics along the diagonal of the two-time plane.
#[derive(Debug, Clone)]
pub struct TimeTrace {
    pub points: Vec<TracePoint>,
}

impl TimeTrace {
    pub fn peak_negativity(&self) -> f64 {
        self.points.iter().map(|p| p.negativity).fold(0.0, f64::max)
    }

    pub fn peak_mutual_info_ln2(&self) -> f64 {
        self.points.iter().map(|p| p.mutual_info_ln2).fold(0.0, f64::max)
    }

    pub fn peak_abs_k(&self) -> f64 {
        self.points.iter().map(|p| p.k.abs()).fold(0.0, f64::max)
    }
}

/// One (γ, g) record of a phase scan.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub gamma: f64,
    pub g: f64,
    pub k_max: f64,
    pub t_star: f64,
    pub neg_max: f64,
    pub mi_max_ln2: f64,
    pub regime: Regime,
}

/// Default grid for traces: t_max = max(3 t_*, 20) at the requested dt.
pub fn default_trace_grid(params: &ModelParams, dt: f64) -> Result<TimeGrid> {
    let t_max = match analytic::kmax_and_tstar(params) {
        Ok((_, t_star)) => (3.0 * t_star).max(20.0),
        Err(_) => 20.0, // g = 0: flat trace, any window works
    };
    TimeGrid::from_dt(t_max, dt)
}

/// Diagonal trace of (k, 𝒩, I/ln2) on a grid, from either source.
pub fn time_trace(params: &ModelParams, grid: &TimeGrid, source: Source) -> Result<TimeTrace> {
    let ks: Vec<(f64, f64)> = match source {
        Source::Analytic => {
            let mut v = Vec::with_capacity(grid.n_points());
            for i in 0..grid.n_points() {
                let t = grid.time(i);
                v.push((t, analytic::response_diag(t, params)?));
            }
            v
        }
        Source::Numeric => {
            let profile = sd::solve_diagonal(params, grid)?;
            profile.samples.iter().map(|&(t, g)| (t, g.im)).collect()
        }
    };
    let ln2 = std::f64::consts::LN_2;
    let mut points = Vec::with_capacity(ks.len());
    for (t, k) in ks {
        let state = density_from_k(k)?;
        points.push(TracePoint {
            t,
            k,
            negativity: channel::negativity(&state),
            mutual_info_ln2: channel::mutual_information(&state) / ln2,
        });
    }
    Ok(TimeTrace { points })
}

/// Peak |k| and its location from a sampled profile, with three-point
/// parabolic refinement around the discrete maximum.
fn refined_peak(samples: &[(f64, f64)]) -> (f64, f64) {
    let mut best = 0usize;
    for (i, s) in samples.iter().enumerate() {
        if s.1.abs() > samples[best].1.abs() {
            best = i;
        }
    }
    let y = |i: usize| samples[i].1.abs();
    if best == 0 || best + 1 == samples.len() {
        return (y(best), samples[best].0);
    }
    let (ym, y0, yp) = (y(best - 1), y(best), y(best + 1));
    let denom = ym - 2.0 * y0 + yp;
    if denom.abs() < 1e-300 {
        return (y0, samples[best].0);
    }
    let delta = 0.5 * (ym - yp) / denom;
    let dt = samples[best].0 - samples[best - 1].0;
    let value = y0 - 0.25 * (ym - yp) * delta;
    (value, samples[best].0 + delta * dt)
}

/// (k_max, t_star) for one parameter point from the chosen source.
pub fn peak_response(params: &ModelParams, dt: f64, source: Source) -> Result<(f64, f64)> {
    match source {
        Source::Analytic => analytic::kmax_and_tstar(params),
        Source::Numeric => {
            let grid = default_trace_grid(params, dt)?;
            let profile = sd::solve_diagonal(params, &grid)?;
            let samples: Vec<(f64, f64)> =
                profile.samples.iter().map(|&(t, g)| (t, g.im)).collect();
            Ok(refined_peak(&samples))
        }
    }
}

/// Sweep configuration shared by all rows.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub g: f64,
    pub dt: f64,
    pub source: Source,
    pub ns_factor: f64,
}

impl SweepConfig {
    pub fn new(g: f64, dt: f64, source: Source) -> Self {
        Self { g, dt, source, ns_factor: NS_FACTOR_DEFAULT }
    }
}

fn sweep_row(gamma: f64, cfg: &SweepConfig) -> Result<SweepRow> {
    let params = ModelParams::new(gamma, cfg.g)?;
    let (k_max, t_star) = peak_response(&params, cfg.dt, cfg.source)?;
    let state = density_from_k(k_max.clamp(-1.0, 1.0))?;
    Ok(SweepRow {
        gamma,
        g: cfg.g,
        k_max,
        t_star,
        neg_max: channel::negativity(&state),
        mi_max_ln2: channel::mutual_information(&state) / std::f64::consts::LN_2,
        regime: channel::classify(k_max, &params, cfg.ns_factor),
    })
}

/// One row per γ, evaluated in parallel, emitted in input order.
pub fn sweep(gammas: &[f64], cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if gammas.is_empty() {
        return Err(Error::Domain("gamma list must be non-empty".into()));
    }
    gammas
        .par_iter()
        .map(|&gamma| sweep_row(gamma, cfg))
        .collect::<Result<Vec<_>>>()
}

/// Quantum-classical transition point: the γ where the peak negativity
/// turns on, located by bisection of neg_max(γ) on [0, 1).
pub fn find_gamma_q(g: f64, tol: f64) -> Result<f64> {
    if g == 0.0 || g.abs() > 0.05 {
        return Err(Error::Domain(format!("require 0 < |g| <= 0.05, got g = {g}")));
    }
    if tol < 1e-10 {
        return Err(Error::Domain(format!("tolerance must be >= 1e-10, got {tol}")));
    }
    let neg_max = |gamma: f64| -> Result<f64> {
        let params = ModelParams::new(gamma, g)?;
        let (k_max, _) = analytic::kmax_and_tstar(&params)?;
        Ok(channel::negativity(&density_from_k(k_max.min(1.0))?))
    };
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-9);
    if neg_max(lo)? <= 0.0 || neg_max(hi)? > 0.0 {
        return Err(Error::Bracket(
            "peak negativity does not change sign on [0, 1)".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if neg_max(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Classical-to-no-signal crossover at finite g: the first γ where
/// k_max(γ) drops to ns_factor·|g|. Sharp only as g → 0, where it
/// approaches γ_c = 1.
pub fn find_gamma_c(g: f64, ns_factor: f64) -> Result<f64> {
    if g == 0.0 || g.abs() > 0.05 {
        return Err(Error::Domain(format!("require 0 < |g| <= 0.05, got g = {g}")));
    }
    if !(ns_factor >= 0.0) {
        return Err(Error::Domain("ns_factor must be >= 0".into()));
    }
    let excess = |gamma: f64| -> Result<f64> {
        let params = ModelParams::new(gamma, g)?;
        let (k_max, _) = analytic::kmax_and_tstar(&params)?;
        Ok(k_max - ns_factor * g.abs())
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if excess(lo)? <= 0.0 {
        return Ok(0.0);
    }
    if excess(hi)? > 0.0 {
        // Peak response stays above the cutoff all the way to γ = 1; the
        // crossover is the transition point itself.
        return Ok(1.0);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
