//! Response-function measurements: the anticommutator (Kubo) route on the
//! doubled state space and the operator-size route on a single party.
//!
//! Sign convention: the returned response carries the Wightman sign, fixed
//! so that the free theory at t = 0 gives K = −sin g. The raw Kubo
//! anticommutator is the negative of this value; the convention is pinned
//! by [`convention_self_test`].

use num_complex::Complex64;
use rayon::prelude::*;

use crate::brownian::{self, BrownianTerms, DisorderPath, Term};
use crate::config::{OracleConfig, TROTTER_GUARD_LIMIT};
use crate::epr;
use crate::error::{OracleError, Result};
use crate::evolve::{self, StateEvolver};
use crate::majorana::{hermitian_string_basis, BasisString, MajoranaAlgebra};
use crate::stats::Stats;

/// Disorder-averaged response measurement.
#[derive(Debug, Clone)]
pub struct ResponseStats {
    /// Signed response (Wightman convention).
    pub k: Stats,
    /// Magnitude statistics.
    pub abs_k: Stats,
    /// Per-realization signed values, in realization order.
    pub per_realization: Vec<f64>,
}

impl ResponseStats {
    fn from_values(values: Vec<f64>) -> Self {
        let abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
        ResponseStats {
            k: Stats::from_samples(&values),
            abs_k: Stats::from_samples(&abs),
            per_realization: values,
        }
    }
}

/// Shared immutable context for Kubo evaluations on the doubled space.
pub(crate) struct KuboContext {
    pub algebra: MajoranaAlgebra,
    pub epr: Vec<Complex64>,
    pub terms: BrownianTerms,
    /// Combined left+right term list; slice draws are duplicated to match.
    pub combined: Vec<Term>,
    pub n_l: usize,
    pub n_r: usize,
    pub dt: f64,
    pub g: f64,
    pub n_sys: u32,
}

impl KuboContext {
    pub fn new(config: &OracleConfig) -> Result<Self> {
        config.validate()?;
        config.check_pair_dimension()?;
        let algebra = MajoranaAlgebra::new(2 * config.modes_per_party())?;
        let epr = epr::build_epr(&algebra)?;
        let terms = brownian::coupled_terms(config, &algebra);
        let mut combined = terms.left.clone();
        combined.extend_from_slice(&terms.right);
        let (n_l, n_r) = config.slice_counts();
        Ok(Self {
            algebra,
            epr,
            terms,
            combined,
            n_l,
            n_r,
            dt: config.dt_trotter,
            g: config.g,
            n_sys: config.n_sys,
        })
    }

    pub fn n_slices(&self) -> usize {
        self.n_l.max(self.n_r)
    }

    fn step(
        &self,
        evolver: &mut StateEvolver,
        path: &DisorderPath,
        k: usize,
        dt: f64,
        substeps: usize,
        psi: &mut [Complex64],
        draw_buf: &mut Vec<f64>,
    ) {
        if self.terms.n_draws == 0 {
            return; // free theory
        }
        let slice = path.slice(k);
        draw_buf.clear();
        draw_buf.extend_from_slice(slice);
        draw_buf.extend_from_slice(slice);
        let sub_dt = dt / substeps as f64;
        for _ in 0..substeps {
            evolver.step(&self.combined, draw_buf, sub_dt, psi);
        }
    }

    /// Apply the two-sided coupling e^{−i·sign·g·V}, V = −(i/2)Σ_j χ_{jL}χ_{jR}.
    pub fn apply_coupling(&self, sign: f64, psi: &mut [Complex64]) {
        let modes = self.algebra.n_modes() / 2;
        for j in 0..self.n_sys {
            let v = self
                .algebra
                .chi(j)
                .mul(&self.algebra.chi(modes + j))
                .scaled_phase(3);
            v.rotate(sign * self.g / 2.0, psi);
        }
    }

    fn apply_string(&self, mode: u32, psi: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        self.algebra
            .chi(mode)
            .accumulate(Complex64::new(1.0, 0.0), psi, out);
    }

    /// Signed response of one realization: K = −Re⟨L|R⟩ with
    /// |L⟩ = χ_{1L}(−t_L)|EPR⟩ and |R⟩ = 𝒰†χ_{1R}(t_R)𝒰|EPR⟩.
    pub fn response_single(&self, path: &DisorderPath, substeps: usize) -> f64 {
        let dim = self.algebra.dim();
        let mut evolver = StateEvolver::new(dim);
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        let mut draw_buf: Vec<f64> = Vec::with_capacity(2 * self.terms.n_draws);

        // |L⟩ = χ_{1L}(−t_L)|EPR⟩. Couplings mirror across t = 0, so the
        // excursion to −t_L is the inverse of the anti-time-ordered forward
        // product: slice 0 is applied first on the way out and last on the
        // way back.
        let mut left = self.epr.clone();
        for k in 0..self.n_l {
            self.step(&mut evolver, path, k, -self.dt, substeps, &mut left, &mut draw_buf);
        }
        self.apply_string(0, &left, &mut buf);
        std::mem::swap(&mut left, &mut buf);
        for k in (0..self.n_l).rev() {
            self.step(&mut evolver, path, k, self.dt, substeps, &mut left, &mut draw_buf);
        }

        // |R⟩ = 𝒰† U_f(t_R)† χ_{1R} U_f(t_R) 𝒰 |EPR⟩.
        let mut right = self.epr.clone();
        self.apply_coupling(1.0, &mut right);
        for k in 0..self.n_r {
            self.step(&mut evolver, path, k, self.dt, substeps, &mut right, &mut draw_buf);
        }
        let chi_1r = self.algebra.n_modes() / 2;
        self.apply_string(chi_1r, &right, &mut buf);
        std::mem::swap(&mut right, &mut buf);
        for k in (0..self.n_r).rev() {
            self.step(&mut evolver, path, k, -self.dt, substeps, &mut right, &mut draw_buf);
        }
        self.apply_coupling(-1.0, &mut right);

        let overlap: Complex64 = left.iter().zip(&right).map(|(a, b)| a.conj() * b).sum();
        -overlap.re
    }

    /// Convergence guard on realization 0: integrating every slice in two
    /// half steps must not move the response by more than the limit.
    pub fn trotter_guard(&self, seed: u64) -> Result<()> {
        if self.terms.n_draws == 0 || self.n_slices() == 0 {
            return Ok(());
        }
        let mut rng = brownian::realization_rng(seed, 0);
        let path = brownian::sample_path(&mut rng, self.n_slices(), self.terms.n_draws);
        let coarse = self.response_single(&path, 1);
        let fine = self.response_single(&path, 2);
        let delta = (coarse - fine).abs();
        if delta > TROTTER_GUARD_LIMIT {
            return Err(OracleError::Trotter { delta, limit: TROTTER_GUARD_LIMIT });
        }
        Ok(())
    }
}

/// Disorder-averaged Kubo response (Wightman sign convention).
pub fn kubo_response(config: &OracleConfig) -> Result<ResponseStats> {
    let ctx = KuboContext::new(config)?;
    ctx.trotter_guard(config.seed)?;
    let values: Vec<f64> = (0..config.n_samples as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = brownian::realization_rng(config.seed, r);
            let path = brownian::sample_path(&mut rng, ctx.n_slices(), ctx.terms.n_draws);
            ctx.response_single(&path, 1)
        })
        .collect();
    Ok(ResponseStats::from_values(values))
}

/// Startup self-test of the sign convention: the free theory at t = 0 must
/// give K = −sin g to ten digits.
pub fn convention_self_test() -> Result<()> {
    let config = OracleConfig::symmetric(2, 0, 0.0, 0.2, 0.0, 1e-3, 1, 0);
    let ctx = KuboContext::new(&config)?;
    let path = DisorderPath { draws: vec![], n_draws_per_slice: 0, n_slices: 0 };
    let k = ctx.response_single(&path, 1);
    let expected = -(0.2f64).sin();
    if (k - expected).abs() > 1e-10 {
        return Err(OracleError::Config(format!(
            "sign convention self-test failed: K = {k}, expected {expected}"
        )));
    }
    Ok(())
}

/// Operator-size machinery of one party.
pub(crate) struct SizeContext {
    pub algebra: MajoranaAlgebra,
    pub terms: Vec<Term>,
    pub basis: Vec<BasisString>,
    pub n_draws: usize,
    pub dt: f64,
    pub g: f64,
}

impl SizeContext {
    pub fn new(config: &OracleConfig) -> Result<Self> {
        config.validate()?;
        config.check_basis_size()?;
        let algebra = MajoranaAlgebra::new(config.modes_per_party())?;
        let terms = brownian::left_party_terms(config, &algebra);
        let basis = hermitian_string_basis(&algebra, config.n_sys);
        let n_draws = terms.len();
        Ok(Self { algebra, terms, basis, n_draws, dt: config.dt_trotter, g: config.g })
    }

    fn slice_unitary(&self, path: &DisorderPath, k: usize, dt: f64) -> nalgebra::DMatrix<Complex64> {
        let h = evolve::dense_hamiltonian(&self.terms, path.slice(k), self.algebra.dim());
        evolve::slice_unitary(&h, dt)
    }

    /// Expansion coefficients of χ_{1L}(−t) over the Hermitian string
    /// basis. Under mirrored couplings the −t Heisenberg operator is the
    /// anti-time-ordered conjugation, built from the latest slice inward:
    /// D = U_0 (U_1 (… U_{n−1} χ U_{n−1}† …) U_1†) U_0†.
    pub fn coefficients_at(&self, path: &DisorderPath, n_slices: usize) -> Vec<f64> {
        let dim = self.algebra.dim();
        let mut d = evolve::dense_string(&self.algebra.chi(0), dim);
        for k in (0..n_slices).rev() {
            let u = self.slice_unitary(path, k, self.dt);
            d = &u * &d * u.adjoint();
        }
        self.expand(&d)
    }

    /// Same, for the forward Heisenberg operator χ_{1L}(+t): the conjugation
    /// runs in reverse slice order with the adjoint on the left.
    pub fn coefficients_forward(&self, path: &DisorderPath, n_slices: usize) -> Vec<f64> {
        let dim = self.algebra.dim();
        let mut d = evolve::dense_string(&self.algebra.chi(0), dim);
        for k in (0..n_slices).rev() {
            let u = self.slice_unitary(path, k, self.dt);
            d = u.adjoint() * &d * &u;
        }
        self.expand(&d)
    }

    fn expand(&self, d: &nalgebra::DMatrix<Complex64>) -> Vec<f64> {
        self.basis
            .iter()
            .map(|b| {
                let c = b.string.normalized_trace_with(d);
                debug_assert!(c.im.abs() < 1e-9, "coefficient should be real, got {c}");
                c.re
            })
            .collect()
    }

    /// K from the size representation: −Σ_{n_S>0} sin(g·n_S) c_S(−t_L) c_S(−t_R).
    pub fn response_from_coefficients(&self, c_l: &[f64], c_r: &[f64]) -> f64 {
        let mut acc = 0.0;
        for ((b, cl), cr) in self.basis.iter().zip(c_l).zip(c_r) {
            if b.size > 0 {
                acc += (self.g * b.size as f64).sin() * cl * cr;
            }
        }
        -acc
    }

    pub fn mean_size(&self, c: &[f64]) -> f64 {
        self.basis
            .iter()
            .zip(c)
            .map(|(b, &ci)| b.size as f64 * ci * ci)
            .sum()
    }

    pub fn total_weight(&self, c: &[f64]) -> f64 {
        c.iter().map(|x| x * x).sum()
    }
}

/// Size-route measurement, optionally cross-checked realization by
/// realization against the Kubo route on the doubled space.
#[derive(Debug, Clone)]
pub struct SizeComparison {
    pub k_size: ResponseStats,
    pub k_kubo: Option<ResponseStats>,
    /// Largest per-realization |K_size − K_kubo| when cross-checking.
    pub max_abs_diff: Option<f64>,
}

/// Response via the operator-size representation.
pub fn size_representation_response(
    config: &OracleConfig,
    cross_check: bool,
) -> Result<SizeComparison> {
    let size_ctx = SizeContext::new(config)?;
    let kubo_ctx = if cross_check { Some(KuboContext::new(config)?) } else { None };
    if let Some(ctx) = &kubo_ctx {
        ctx.trotter_guard(config.seed)?;
    }
    let (n_l, n_r) = config.slice_counts();
    let n_slices = n_l.max(n_r);
    let results: Vec<(f64, Option<f64>)> = (0..config.n_samples as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = brownian::realization_rng(config.seed, r);
            let path = brownian::sample_path(&mut rng, n_slices, size_ctx.n_draws);
            let c_l = size_ctx.coefficients_at(&path, n_l);
            let c_r = if n_r == n_l { c_l.clone() } else { size_ctx.coefficients_at(&path, n_r) };
            let k_size = size_ctx.response_from_coefficients(&c_l, &c_r);
            let k_kubo = kubo_ctx.as_ref().map(|ctx| ctx.response_single(&path, 1));
            (k_size, k_kubo)
        })
        .collect();
    let size_values: Vec<f64> = results.iter().map(|r| r.0).collect();
    let kubo_values: Option<Vec<f64>> = if cross_check {
        Some(results.iter().map(|r| r.1.unwrap()).collect())
    } else {
        None
    };
    let max_abs_diff = kubo_values.as_ref().map(|kv| {
        kv.iter()
            .zip(&size_values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    Ok(SizeComparison {
        k_size: ResponseStats::from_values(size_values),
        k_kubo: kubo_values.map(ResponseStats::from_values),
        max_abs_diff,
    })
}

/// Disorder-averaged mean shifted operator size of χ_{1L}(t); the zero
/// point n₀ vanishes at infinite temperature.
pub fn mean_shifted_size(config: &OracleConfig, t: f64) -> Result<Stats> {
    if !(t >= 0.0) {
        return Err(OracleError::Config(format!("time must be >= 0, got {t}")));
    }
    let ctx = SizeContext::new(config)?;
    let n_slices = if t <= 0.0 { 0 } else { (t / config.dt_trotter).round().max(1.0) as usize };
    let values: Vec<f64> = (0..config.n_samples as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = brownian::realization_rng(config.seed, r);
            let path = brownian::sample_path(&mut rng, n_slices, ctx.n_draws);
            let c = ctx.coefficients_forward(&path, n_slices);
            ctx.mean_size(&c)
        })
        .collect();
    Ok(Stats::from_samples(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn convention_fixed_by_free_theory() {
        convention_self_test().unwrap();
    }

    #[test]
    fn free_theory_rotation_values() {
        // J = V = 0, t = 0: |K| = sin g to ten digits, for several g.
        for g in [0.05, 0.2, 0.7] {
            let config = OracleConfig::symmetric(4, 0, 0.0, g, 0.0, 1e-3, 1, 0);
            let stats = kubo_response(&config).unwrap();
            assert_relative_eq!(stats.k.mean, -g.sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_g_zero_response_at_t0() {
        let config = OracleConfig::symmetric(2, 2, 0.5, 0.0, 0.0, 1e-2, 2, 3);
        let stats = kubo_response(&config).unwrap();
        assert!(stats.k.mean.abs() < 1e-12);
    }

    #[test]
    fn size_representation_free_theory() {
        // At t = 0 only the bare string contributes with size 1.
        let config = OracleConfig::symmetric(4, 2, 0.3, 0.2, 0.0, 1e-2, 1, 9);
        let ctx = SizeContext::new(&config).unwrap();
        let path = DisorderPath { draws: vec![], n_draws_per_slice: ctx.n_draws, n_slices: 0 };
        let c = ctx.coefficients_at(&path, 0);
        let weight = ctx.total_weight(&c);
        assert_relative_eq!(weight, 1.0, epsilon = 1e-12);
        assert_relative_eq!(ctx.mean_size(&c), 1.0, epsilon = 1e-12);
        let k = ctx.response_from_coefficients(&c, &c);
        assert_relative_eq!(k, -(0.2f64).sin(), epsilon = 1e-12);
    }

    #[test]
    fn size_equals_kubo_per_realization() {
        // The central identity: both routes agree per realization.
        let config = OracleConfig::symmetric(4, 4, 0.5, 0.05, 0.5, 5e-3, 3, 11);
        let cmp = size_representation_response(&config, true).unwrap();
        assert!(
            cmp.max_abs_diff.unwrap() < 1e-8,
            "max diff {:?}",
            cmp.max_abs_diff
        );
    }

    #[test]
    fn operator_weight_is_conserved() {
        let config = OracleConfig::symmetric(4, 2, 0.7, 0.05, 0.4, 5e-3, 1, 13);
        let ctx = SizeContext::new(&config).unwrap();
        let mut rng = brownian::realization_rng(13, 0);
        let path = brownian::sample_path(&mut rng, 80, ctx.n_draws);
        let c = ctx.coefficients_at(&path, 80);
        assert_relative_eq!(ctx.total_weight(&c), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn mean_size_at_zero_time() {
        let config = OracleConfig::symmetric(4, 2, 0.5, 0.01, 0.0, 1e-2, 2, 17);
        let stats = mean_shifted_size(&config, 0.0).unwrap();
        assert_eq!(stats.mean, 1.0);
        assert_eq!(stats.stderr, 0.0);
    }

    #[test]
    fn determinism_same_seed() {
        let config = OracleConfig::symmetric(2, 2, 0.4, 0.05, 0.3, 5e-3, 4, 21);
        let a = kubo_response(&config).unwrap();
        let b = kubo_response(&config).unwrap();
        assert_eq!(a.per_realization, b.per_realization);
        let c = {
            let mut cfg = config;
            cfg.seed = 22;
            kubo_response(&cfg).unwrap()
        };
        assert_ne!(a.per_realization, c.per_realization);
    }

    #[test]
    fn response_magnitude_bounded() {
        let config = OracleConfig::symmetric(4, 2, 0.8, 0.3, 0.8, 5e-3, 6, 23);
        let stats = kubo_response(&config).unwrap();
        for v in &stats.per_realization {
            assert!(v.abs() <= 1.0 + 1e-9);
        }
    }
}
