//! The maximally entangled two-party resource state, built as the common
//! +1 eigenstate of every pair projector (1 − i χ_{m,L} χ_{m,R})/2.
//!
//! That projector condition is the annihilation property
//! (χ_{m,L} + i χ_{m,R})|EPR⟩ = 0 for every mode pair.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{OracleError, Result};
use crate::majorana::MajoranaAlgebra;

/// Residual tolerance for the defining annihilation property.
pub const ANNIHILATION_TOL: f64 = 1e-10;

fn project_pairs(
    algebra: &MajoranaAlgebra,
    pairs: &[(u32, u32)],
    reference: &[Complex64],
) -> Vec<Complex64> {
    let dim = algebra.dim();
    let mut psi = reference.to_vec();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for &(a, b) in pairs {
        // v = -i χ_a χ_b; project onto its +1 eigenspace.
        let v = algebra.chi(a).mul(&algebra.chi(b)).scaled_phase(3);
        debug_assert!(v.is_hermitian_involution());
        for (o, &p) in out.iter_mut().zip(psi.iter()) {
            *o = 0.5 * p;
        }
        v.accumulate(Complex64::new(0.5, 0.0), &psi, &mut out);
        std::mem::swap(&mut psi, &mut out);
    }
    psi
}

fn norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum residual ‖(χ_a + i χ_b) ψ‖ over the given mode pairs.
pub fn annihilation_residual_pairs(
    algebra: &MajoranaAlgebra,
    pairs: &[(u32, u32)],
    psi: &[Complex64],
) -> f64 {
    let dim = algebra.dim();
    let mut worst: f64 = 0.0;
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    for &(a, b) in pairs {
        buf.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        algebra.chi(a).accumulate(Complex64::new(1.0, 0.0), psi, &mut buf);
        algebra.chi(b).accumulate(Complex64::new(0.0, 1.0), psi, &mut buf);
        worst = worst.max(norm(&buf));
    }
    worst
}

/// Maximum residual over the left-right pairing of a two-party algebra.
pub fn annihilation_residual(algebra: &MajoranaAlgebra, psi: &[Complex64]) -> f64 {
    annihilation_residual_pairs(algebra, &party_pairs(algebra.n_modes()), psi)
}

fn party_pairs(n_modes: u32) -> Vec<(u32, u32)> {
    let half = n_modes / 2;
    (0..half).map(|m| (m, half + m)).collect()
}

/// Build the normalized state annihilated by (χ_a + i χ_b) for every pair.
pub fn build_paired_state(
    algebra: &MajoranaAlgebra,
    pairs: &[(u32, u32)],
) -> Result<Vec<Complex64>> {
    let dim = algebra.dim();
    // The computational reference usually overlaps the pair state; fall back
    // to seeded random references if a projection collapses.
    let mut reference = vec![Complex64::new(0.0, 0.0); dim];
    reference[0] = Complex64::new(1.0, 0.0);
    for attempt in 0..4 {
        let psi = project_pairs(algebra, pairs, &reference);
        let n = norm(&psi);
        if n * n > 1e-10 {
            let mut psi: Vec<Complex64> = psi.into_iter().map(|a| a / n).collect();
            // Fix the global phase: make the largest amplitude real positive
            // so the construction is reference-independent.
            let mut pivot = 0;
            for (i, a) in psi.iter().enumerate() {
                if a.norm_sqr() > psi[pivot].norm_sqr() {
                    pivot = i;
                }
            }
            let phase = psi[pivot] / psi[pivot].norm();
            psi.iter_mut().for_each(|a| *a /= phase);
            let residual = annihilation_residual_pairs(algebra, pairs, &psi);
            if residual > ANNIHILATION_TOL {
                return Err(OracleError::Degeneracy(format!(
                    "annihilation residual {residual:.3e} exceeds {ANNIHILATION_TOL:.0e}"
                )));
            }
            return Ok(psi);
        }
        let mut rng = ChaCha12Rng::seed_from_u64(0x45505231 + attempt);
        for a in reference.iter_mut() {
            *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    Err(OracleError::Degeneracy(
        "pair projection annihilated every reference state".into(),
    ))
}

/// Build the two-party resource state on an algebra holding both parties
/// (modes 0..n/2 on the left, n/2..n on the right, paired in order).
pub fn build_epr(algebra: &MajoranaAlgebra) -> Result<Vec<Complex64>> {
    if algebra.n_modes() % 4 != 0 {
        return Err(OracleError::Config(format!(
            "pair state needs both parties in the algebra; {} modes cannot split evenly",
            algebra.n_modes()
        )));
    }
    build_paired_state(algebra, &party_pairs(algebra.n_modes()))
}
