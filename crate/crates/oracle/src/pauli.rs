//! Pauli strings over up to 64 qubits with exact phase tracking.
//!
//! A string is i^phase · Π_q X_q^{x_q} Z_q^{z_q} with the per-qubit
//! convention Y = i X Z. Majorana monomials, their products, and the
//! two-sided coupling all live in this representation, so Hamiltonian
//! application and single-term rotations are O(dim) bit arithmetic.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
    /// Power of i in the global phase, mod 4.
    pub phase: u8,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0, phase: 0 };

    /// Product self · rhs with exact phase bookkeeping:
    /// (X^a Z^b)(X^c Z^d) = (−1)^{|b∧c|} X^{a⊕c} Z^{b⊕d}.
    pub fn mul(&self, rhs: &PauliString) -> PauliString {
        let swaps = (self.z & rhs.x).count_ones() as u8;
        PauliString {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: (self.phase + rhs.phase + 2 * (swaps & 1)) % 4,
        }
    }

    /// Multiply the global phase by i^k.
    pub fn scaled_phase(&self, k: u8) -> PauliString {
        PauliString { x: self.x, z: self.z, phase: (self.phase + k) % 4 }
    }

    /// Hermitian (equivalently, squares to +1) iff the phase power and the
    /// X/Z overlap have equal parity.
    pub fn is_hermitian_involution(&self) -> bool {
        (self.phase as u32 + (self.x & self.z).count_ones()) % 2 == 0
    }

    fn phase_factor(&self) -> Complex64 {
        match self.phase {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Amplitude ⟨b ⊕ x | P | b⟩ (the only nonzero entry of column b).
    pub fn amplitude(&self, b: u64) -> Complex64 {
        let sign = if (b & self.z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        self.phase_factor() * sign
    }

    /// out += coeff · P · input.
    pub fn accumulate(&self, coeff: Complex64, input: &[Complex64], out: &mut [Complex64]) {
        let base = coeff * self.phase_factor();
        for (b, &amp_in) in input.iter().enumerate() {
            let b = b as u64;
            let sign = ((b & self.z).count_ones() & 1) as f64;
            let factor = base * (1.0 - 2.0 * sign);
            out[(b ^ self.x) as usize] += factor * amp_in;
        }
    }

    /// In-place ψ ← e^{−iθP} ψ = (cos θ − i sin θ P) ψ for a Hermitian
    /// involution P.
    pub fn rotate(&self, theta: f64, psi: &mut [Complex64]) {
        debug_assert!(self.is_hermitian_involution());
        let (c, s) = (theta.cos(), theta.sin());
        let mis = Complex64::new(0.0, -s);
        if self.x == 0 {
            // Diagonal string: eigenvalue ±1 per basis state.
            let pf = self.phase_factor();
            for (b, amp) in psi.iter_mut().enumerate() {
                let sign = if (b as u64 & self.z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                *amp *= c + mis * (pf * sign);
            }
            return;
        }
        for b in 0..psi.len() as u64 {
            let partner = b ^ self.x;
            if partner < b {
                continue;
            }
            let amp_bp = self.amplitude(partner); // ⟨b|P|partner⟩
            let amp_pb = self.amplitude(b); // ⟨partner|P|b⟩
            let (pb, pp) = (psi[b as usize], psi[partner as usize]);
            psi[b as usize] = c * pb + mis * amp_bp * pp;
            psi[partner as usize] = c * pp + mis * amp_pb * pb;
        }
    }

    /// Dense matrix accumulation: m += coeff · P (column b holds P|b⟩).
    pub fn add_to_dense(&self, coeff: Complex64, m: &mut nalgebra::DMatrix<Complex64>) {
        let dim = m.nrows() as u64;
        for b in 0..dim {
            m[((b ^ self.x) as usize, b as usize)] += coeff * self.amplitude(b);
        }
    }

    /// tr(P · A) / dim for dense A.
    pub fn normalized_trace_with(&self, a: &nalgebra::DMatrix<Complex64>) -> Complex64 {
        let dim = a.nrows() as u64;
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..dim {
            // ⟨i|P|j⟩ is nonzero only at i = j ⊕ x, so tr(PA) picks up
            // amplitude(j) · A[j, j ⊕ x].
            acc += self.amplitude(b) * a[(b as usize, (b ^ self.x) as usize)];
        }
        acc / dim as f64
    }
}
