//! Brownian coupling structure: term lists for the left/right party
//! Hamiltonians and per-slice Gaussian draws.
//!
//! Couplings are piecewise constant over each Trotter slice with variance
//! 2J/(M N² dt) for the four-fermion couplings and V/(M dt) for the
//! two-fermion ones (J = 1/4, V = γJ). The right party reuses the left
//! party's draws with the sign of every two-fermion coupling flipped.
//! Couplings at negative times mirror their positive-time values, so the
//! protocol's backward leg is the exact inverse of the forward evolution.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::OracleConfig;
use crate::majorana::MajoranaAlgebra;
use crate::pauli::PauliString;

const J_UNIT: f64 = 0.25;

/// Static shape of one Hamiltonian term: a Hermitian involution string and
/// the standard deviation its slice coefficient is drawn with.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub string: PauliString,
    pub sigma: f64,
}

/// Index layout of the two parties inside the global Majorana ordering
/// (L system, L environment, R system, R environment).
#[derive(Debug, Clone, Copy)]
pub struct PartyLayout {
    pub n_sys: u32,
    pub m_env: u32,
}

impl PartyLayout {
    pub fn modes_per_party(&self) -> u32 {
        self.n_sys + self.m_env
    }

    pub fn l_sys(&self, j: u32) -> u32 {
        j
    }

    pub fn l_env(&self, a: u32) -> u32 {
        self.n_sys + a
    }

    pub fn r_sys(&self, j: u32) -> u32 {
        self.modes_per_party() + j
    }

    pub fn r_env(&self, a: u32) -> u32 {
        self.modes_per_party() + self.n_sys + a
    }
}

/// Term lists for both parties over a common draw ordering: entry i of
/// both lists shares the i-th Gaussian draw of each slice.
#[derive(Debug, Clone)]
pub struct BrownianTerms {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
    /// Draws per slice (== left.len() == right.len()).
    pub n_draws: usize,
}

/// Build the coupled term lists on an algebra holding both parties.
///
/// Draw order per slice: four-fermion couplings J_{jkla} in lexicographic
/// (j<k<l, a) order, then two-fermion couplings V_{ja} in (j, a) order.
pub fn coupled_terms(config: &OracleConfig, algebra: &MajoranaAlgebra) -> BrownianTerms {
    let layout = PartyLayout { n_sys: config.n_sys, m_env: config.m_env };
    debug_assert_eq!(algebra.n_modes(), 2 * layout.modes_per_party());
    let (n, m) = (config.n_sys, config.m_env);
    let v_coupling = config.gamma * J_UNIT;

    let mut left = Vec::new();
    let mut right = Vec::new();
    let sigma_j = if m > 0 {
        (2.0 * J_UNIT / (m as f64 * (n as f64).powi(2) * config.dt_trotter)).sqrt()
    } else {
        0.0
    };
    for j in 0..n {
        for k in (j + 1)..n {
            for l in (k + 1)..n {
                for a in 0..m {
                    let sl = algebra.product(&[
                        layout.l_sys(j),
                        layout.l_sys(k),
                        layout.l_sys(l),
                        layout.l_env(a),
                    ]);
                    let sr = algebra.product(&[
                        layout.r_sys(j),
                        layout.r_sys(k),
                        layout.r_sys(l),
                        layout.r_env(a),
                    ]);
                    debug_assert!(sl.is_hermitian_involution());
                    debug_assert!(sr.is_hermitian_involution());
                    left.push(Term { string: sl, sigma: sigma_j });
                    right.push(Term { string: sr, sigma: sigma_j });
                }
            }
        }
    }
    let sigma_v = if m > 0 {
        (v_coupling / (m as f64 * config.dt_trotter)).sqrt()
    } else {
        0.0
    };
    for j in 0..n {
        for a in 0..m {
            // i χ_j ψ_a, Hermitian; the right party flips the sign.
            let sl = algebra
                .product(&[layout.l_sys(j), layout.l_env(a)])
                .scaled_phase(1);
            let sr = algebra
                .product(&[layout.r_sys(j), layout.r_env(a)])
                .scaled_phase(1);
            debug_assert!(sl.is_hermitian_involution());
            left.push(Term { string: sl, sigma: sigma_v });
            right.push(Term { string: sr, sigma: -sigma_v });
        }
    }
    let n_draws = left.len();
    BrownianTerms { left, right, n_draws }
}

/// Left-party term list on a single-party algebra, with the same draw
/// ordering as [`coupled_terms`]; used by the operator-size route.
pub fn left_party_terms(config: &OracleConfig, algebra: &MajoranaAlgebra) -> Vec<Term> {
    debug_assert_eq!(algebra.n_modes(), config.modes_per_party());
    let (n, m) = (config.n_sys, config.m_env);
    let v_coupling = config.gamma * J_UNIT;
    let mut terms = Vec::new();
    let sigma_j = if m > 0 {
        (2.0 * J_UNIT / (m as f64 * (n as f64).powi(2) * config.dt_trotter)).sqrt()
    } else {
        0.0
    };
    for j in 0..n {
        for k in (j + 1)..n {
            for l in (k + 1)..n {
                for a in 0..m {
                    let s = algebra.product(&[j, k, l, n + a]);
                    terms.push(Term { string: s, sigma: sigma_j });
                }
            }
        }
    }
    let sigma_v = if m > 0 {
        (v_coupling / (m as f64 * config.dt_trotter)).sqrt()
    } else {
        0.0
    };
    for j in 0..n {
        for a in 0..m {
            let s = algebra.product(&[j, n + a]).scaled_phase(1);
            terms.push(Term { string: s, sigma: sigma_v });
        }
    }
    terms
}

/// All Gaussian draws of one realization: slice-major, term-minor.
#[derive(Debug, Clone)]
pub struct DisorderPath {
    pub draws: Vec<f64>,
    pub n_draws_per_slice: usize,
    pub n_slices: usize,
}

impl DisorderPath {
    pub fn slice(&self, k: usize) -> &[f64] {
        let start = k * self.n_draws_per_slice;
        &self.draws[start..start + self.n_draws_per_slice]
    }
}

/// Deterministic per-realization RNG: realization k of a root seed owns
/// stream k of a counter-mode ChaCha generator, so draws are reproducible
/// independently of worker scheduling.
pub fn realization_rng(seed: u64, realization: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(realization);
    rng
}

/// Sample every slice's standard-normal draws for one realization.
pub fn sample_path(
    rng: &mut ChaCha12Rng,
    n_slices: usize,
    n_draws_per_slice: usize,
) -> DisorderPath {
    let mut draws = Vec::with_capacity(n_slices * n_draws_per_slice);
    for _ in 0..n_slices * n_draws_per_slice {
        let xi: f64 = StandardNormal.sample(rng);
        draws.push(xi);
    }
    DisorderPath { draws, n_draws_per_slice, n_slices }
}
