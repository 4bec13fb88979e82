//! Majorana mode representation by the iterated tensor (Jordan-Wigner)
//! construction, normalized to χ² = 1, plus the Hermitian string basis
//! used by the operator-size expansion.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{OracleError, Result};
use crate::pauli::PauliString;

/// A set of mutually anticommuting Majorana modes χ_0 … χ_{n−1} acting on
/// 2^{n/2} dimensions. Mode 2q is X-type and mode 2q+1 is Y-type on qubit
/// q, both dressed with the Z string on the qubits below.
#[derive(Debug, Clone)]
pub struct MajoranaAlgebra {
    n_modes: u32,
    strings: Vec<PauliString>,
}

impl MajoranaAlgebra {
    pub fn new(n_modes: u32) -> Result<Self> {
        if n_modes == 0 || n_modes % 2 != 0 {
            return Err(OracleError::Config(format!(
                "Majorana mode count must be even and positive, got {n_modes}"
            )));
        }
        if n_modes > 40 {
            return Err(OracleError::DimensionCap { exponent: n_modes / 2, cap: 20 });
        }
        let mut strings = Vec::with_capacity(n_modes as usize);
        for m in 0..n_modes {
            let q = m / 2;
            let below = (1u64 << q) - 1;
            let s = if m % 2 == 0 {
                PauliString { x: 1 << q, z: below, phase: 0 }
            } else {
                PauliString { x: 1 << q, z: below | (1 << q), phase: 1 }
            };
            debug_assert!(s.is_hermitian_involution());
            strings.push(s);
        }
        Ok(Self { n_modes, strings })
    }

    pub fn n_modes(&self) -> u32 {
        self.n_modes
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_modes / 2
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits()
    }

    /// The string of mode m (0-indexed).
    pub fn chi(&self, m: u32) -> PauliString {
        self.strings[m as usize]
    }

    /// Ordered product χ_{m_1} χ_{m_2} … of the given modes.
    pub fn product(&self, modes: &[u32]) -> PauliString {
        let mut acc = PauliString::IDENTITY;
        for &m in modes {
            acc = acc.mul(&self.chi(m));
        }
        acc
    }

    /// Exact anticommutation check {χ_j, χ_k} = 2δ_{jk}, done algebraically
    /// on the string representation.
    pub fn verify_anticommutation(&self) -> bool {
        for j in 0..self.n_modes {
            for k in 0..self.n_modes {
                let jk = self.chi(j).mul(&self.chi(k));
                let kj = self.chi(k).mul(&self.chi(j));
                if j == k {
                    if jk != PauliString::IDENTITY {
                        return false;
                    }
                } else if jk.x != kj.x || jk.z != kj.z || (jk.phase + 2) % 4 != kj.phase {
                    return false;
                }
            }
        }
        true
    }

    /// Dense matrix of one mode, for small-scale verification.
    pub fn dense(&self, m: u32) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        self.chi(m).add_to_dense(Complex64::new(1.0, 0.0), &mut out);
        out
    }
}

/// One element of the Hermitian Majorana-string basis of a single party.
#[derive(Debug, Clone, Copy)]
pub struct BasisString {
    pub string: PauliString,
    /// Number of system-fermion factors.
    pub size: u32,
}

/// Complete Hermitian string basis {i^{k(k−1)/2} χ_{i_1}…χ_{i_k}} of a
/// party with `n_sys` system modes followed by `m_env` environment modes.
/// Entry s corresponds to the mode subset with bitmask s.
pub fn hermitian_string_basis(algebra: &MajoranaAlgebra, n_sys: u32) -> Vec<BasisString> {
    let n = algebra.n_modes();
    let sys_mask: u64 = (1u64 << n_sys) - 1;
    let count = 1usize << n;
    let mut out = Vec::with_capacity(count);
    for subset in 0..count as u64 {
        let k = subset.count_ones();
        let mut s = PauliString::IDENTITY;
        for m in 0..n {
            if subset & (1 << m) != 0 {
                s = s.mul(&algebra.chi(m));
            }
        }
        // Hermitizing phase i^{k(k-1)/2}.
        let s = s.scaled_phase(((k * (k.wrapping_sub(1)) / 2) % 4) as u8);
        debug_assert!(s.is_hermitian_involution());
        out.push(BasisString { string: s, size: (subset & sys_mask).count_ones() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn anticommutation_exact() {
        for n in [2, 4, 8, 12] {
            let alg = MajoranaAlgebra::new(n).unwrap();
            assert!(alg.verify_anticommutation());
        }
    }

    #[test]
    fn dense_anticommutator_small() {
        // {χ_j, χ_k} = 2 δ_{jk} I on the dense representation.
        let alg = MajoranaAlgebra::new(6).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                let a = alg.dense(j);
                let b = alg.dense(k);
                let anti = &a * &b + &b * &a;
                let expected = if j == k { 2.0 } else { 0.0 };
                for r in 0..alg.dim() {
                    for c in 0..alg.dim() {
                        let target = if r == c { expected } else { 0.0 };
                        assert_relative_eq!(anti[(r, c)].re, target, epsilon = 1e-12);
                        assert_relative_eq!(anti[(r, c)].im, 0.0, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn modes_are_hermitian() {
        let alg = MajoranaAlgebra::new(8).unwrap();
        for m in 0..8 {
            let dense = alg.dense(m);
            let diff = (&dense - dense.adjoint()).norm();
            assert!(diff < 1e-14);
        }
    }

    #[test]
    fn basis_is_orthonormal_and_sized() {
        let alg = MajoranaAlgebra::new(4).unwrap();
        let basis = hermitian_string_basis(&alg, 2);
        assert_eq!(basis.len(), 16);
        // Sizes count only the first two (system) modes.
        assert_eq!(basis[0b0000].size, 0);
        assert_eq!(basis[0b0001].size, 1);
        assert_eq!(basis[0b0110].size, 1);
        assert_eq!(basis[0b1011].size, 2);
        // Orthonormality under tr(S_a S_b)/dim = δ_{ab},
        // and every element is a Hermitian involution.
        for a in &basis {
            assert!(a.string.is_hermitian_involution());
        }
        for (ia, a) in basis.iter().enumerate() {
            for (ib, b) in basis.iter().enumerate() {
                let prod = a.string.mul(&b.string);
                let mut dense = DMatrix::zeros(4, 4);
                prod.add_to_dense(Complex64::new(1.0, 0.0), &mut dense);
                let mut tr = Complex64::new(0.0, 0.0);
                for i in 0..4 {
                    tr += dense[(i, i)];
                }
                let expected = if ia == ib { 4.0 } else { 0.0 };
                assert_relative_eq!(tr.re, expected, epsilon = 1e-13);
                assert_relative_eq!(tr.im, 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn invalid_mode_counts() {
        assert!(MajoranaAlgebra::new(3).is_err());
        assert!(MajoranaAlgebra::new(0).is_err());
        assert!(MajoranaAlgebra::new(42).is_err());
    }
}
