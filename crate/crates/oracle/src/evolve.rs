//! Slice propagators: a Lanczos-Krylov exponential for state vectors and a
//! Taylor scaling-and-squaring exponential for dense party operators.
//!
//! Both integrate the slice-constant Hamiltonian to machine tolerance, so
//! the only physical dt-dependence left is the Brownian discretization of
//! the couplings themselves.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::brownian::Term;
use crate::pauli::PauliString;

/// Per-slice Krylov truncation target for unit-norm states.
pub const KRYLOV_TOL: f64 = 1e-13;

const KRYLOV_MAX: usize = 40;

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// out = Σ_i draws[i]·σ_i · P_i · input.
pub fn apply_hamiltonian(
    terms: &[Term],
    draws: &[f64],
    input: &[Complex64],
    out: &mut [Complex64],
) {
    out.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
    for (term, &xi) in terms.iter().zip(draws) {
        let coeff = term.sigma * xi;
        if coeff != 0.0 {
            term.string.accumulate(Complex64::new(coeff, 0.0), input, out);
        }
    }
}

/// Krylov propagator with reusable scratch space.
pub struct StateEvolver {
    dim: usize,
    basis: Vec<Vec<Complex64>>,
    w: Vec<Complex64>,
}

impl StateEvolver {
    pub fn new(dim: usize) -> Self {
        Self { dim, basis: Vec::new(), w: vec![Complex64::new(0.0, 0.0); dim] }
    }

    /// ψ ← exp(−i dt H) ψ with H = Σ draws[i]·σ_i·P_i. Negative dt gives
    /// the adjoint step.
    pub fn step(&mut self, terms: &[Term], draws: &[f64], dt: f64, psi: &mut [Complex64]) {
        assert_eq!(psi.len(), self.dim);
        let beta0 = norm(psi);
        if beta0 == 0.0 {
            return;
        }
        let mut alphas: Vec<f64> = Vec::with_capacity(16);
        let mut betas: Vec<f64> = Vec::with_capacity(16);
        self.ensure_basis(1);
        for (v, p) in self.basis[0].iter_mut().zip(psi.iter()) {
            *v = p / beta0;
        }
        let mut m = 0;
        let mut u: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
        loop {
            apply_hamiltonian(terms, draws, &self.basis[m], &mut self.w);
            if m > 0 {
                let b = betas[m - 1];
                let (prev, w) = (&self.basis[m - 1], &mut self.w);
                for (wi, pi) in w.iter_mut().zip(prev.iter()) {
                    *wi -= b * pi;
                }
            }
            let alpha = inner(&self.basis[m], &self.w).re;
            {
                let (vm, w) = (&self.basis[m], &mut self.w);
                for (wi, vi) in w.iter_mut().zip(vm.iter()) {
                    *wi -= alpha * vi;
                }
            }
            // One pass of full re-orthogonalization keeps the small basis
            // clean over long products of slices.
            for j in 0..=m {
                let overlap = inner(&self.basis[j], &self.w);
                let (vj, w) = (&self.basis[j], &mut self.w);
                for (wi, vi) in w.iter_mut().zip(vj.iter()) {
                    *wi -= overlap * vi;
                }
            }
            alphas.push(alpha);
            let beta = norm(&self.w);
            u = expm_tridiag_e1(&alphas, &betas, dt);
            let happy = beta < 1e-14 * beta0.max(1.0);
            let err = beta * u.last().map(|c| c.norm()).unwrap_or(0.0) * dt.abs();
            if happy || err < KRYLOV_TOL || m + 1 >= KRYLOV_MAX {
                break;
            }
            betas.push(beta);
            self.ensure_basis(m + 2);
            let (w, basis) = (&self.w, &mut self.basis);
            for (v, wi) in basis[m + 1].iter_mut().zip(w.iter()) {
                *v = wi / beta;
            }
            m += 1;
        }
        for p in psi.iter_mut() {
            *p = Complex64::new(0.0, 0.0);
        }
        for (k, uk) in u.iter().enumerate() {
            let coeff = beta0 * uk;
            for (p, v) in psi.iter_mut().zip(self.basis[k].iter()) {
                *p += coeff * v;
            }
        }
    }

    fn ensure_basis(&mut self, len: usize) {
        while self.basis.len() < len {
            self.basis.push(vec![Complex64::new(0.0, 0.0); self.dim]);
        }
    }
}

/// First column of exp(−i dt T) for the real symmetric tridiagonal T given
/// by its diagonal and off-diagonal entries.
fn expm_tridiag_e1(alphas: &[f64], betas: &[f64], dt: f64) -> Vec<Complex64> {
    let m = alphas.len();
    if m == 1 {
        let phase = Complex64::new(0.0, -dt * alphas[0]).exp();
        return vec![phase];
    }
    let mut t = DMatrix::<f64>::zeros(m, m);
    for (i, &a) in alphas.iter().enumerate() {
        t[(i, i)] = a;
    }
    for (i, &b) in betas.iter().take(m - 1).enumerate() {
        t[(i, i + 1)] = b;
        t[(i + 1, i)] = b;
    }
    let eig = SymmetricEigen::new(t);
    let mut u = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..m {
        let lambda = eig.eigenvalues[k];
        let phase = Complex64::new(0.0, -dt * lambda).exp();
        let weight = eig.eigenvectors[(0, k)];
        for (i, ui) in u.iter_mut().enumerate() {
            *ui += phase * weight * eig.eigenvectors[(i, k)];
        }
    }
    u
}

/// Dense slice Hamiltonian Σ draws[i]·σ_i·P_i.
pub fn dense_hamiltonian(terms: &[Term], draws: &[f64], dim: usize) -> DMatrix<Complex64> {
    let mut h = DMatrix::zeros(dim, dim);
    for (term, &xi) in terms.iter().zip(draws) {
        let coeff = term.sigma * xi;
        if coeff != 0.0 {
            term.string.add_to_dense(Complex64::new(coeff, 0.0), &mut h);
        }
    }
    h
}

/// exp(−i dt H) by Taylor series with scaling and squaring.
pub fn slice_unitary(h: &DMatrix<Complex64>, dt: f64) -> DMatrix<Complex64> {
    let dim = h.nrows();
    let a = h * Complex64::new(0.0, -dt);
    // L1-induced norm for the scaling decision.
    let mut norm1: f64 = 0.0;
    for c in 0..dim {
        let col: f64 = (0..dim).map(|r| a[(r, c)].norm()).sum();
        norm1 = norm1.max(col);
    }
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = &a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    for k in 1..60 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        u += &term;
        if term.norm() < 1e-17 * u.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        u = &u * &u;
    }
    u
}

/// Dense matrix of a single Pauli string.
pub fn dense_string(s: &PauliString, dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(dim, dim);
    s.add_to_dense(Complex64::new(1.0, 0.0), &mut m);
    m
}
