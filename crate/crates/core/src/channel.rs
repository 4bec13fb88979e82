//! Two-qubit channel state built from the response 𝒦, and its metrics:
//! entanglement negativity, mutual information, and regime classification.
//!
//! Entropies are kept in nats internally; callers that want the ln 2 unit
//! convert at the edge.

use crate::error::{Error, Result};
use crate::model::{ModelParams, Regime, K_THRESHOLD};

/// 4x4 real symmetric channel state ρ_{A R_S1} for qubits (A, R_S1) in the
/// computational ordering (|00⟩, |01⟩, |10⟩, |11⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelState {
    pub rho: [[f64; 4]; 4],
    pub k_value: f64,
}

/// Channel state generated by a response value k:
/// ρ11 = ρ44 = (1+k²)/4, ρ22 = ρ33 = (1−k²)/4, ρ14 = ρ41 = k/2.
pub fn density_from_k(k: f64) -> Result<ChannelState> {
    if !(k.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("|k| must be <= 1, got {k}")));
    }
    let k = k.clamp(-1.0, 1.0);
    let outer = (1.0 + k * k) / 4.0;
    let inner = (1.0 - k * k) / 4.0;
    let corner = k / 2.0;
    let rho = [
        [outer, 0.0, 0.0, corner],
        [0.0, inner, 0.0, 0.0],
        [0.0, 0.0, inner, 0.0],
        [corner, 0.0, 0.0, outer],
    ];
    Ok(ChannelState { rho, k_value: k })
}

impl ChannelState {
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.rho[i][i]).sum()
    }

    /// Eigenvalues of ρ in closed form:
    /// {(1−k²)/4, (1−k²)/4, (1+k)²/4, (1−k)²/4}.
    pub fn spectrum(&self) -> [f64; 4] {
        let k = self.k_value;
        [
            (1.0 - k * k) / 4.0,
            (1.0 - k * k) / 4.0,
            (1.0 + k).powi(2) / 4.0,
            (1.0 - k).powi(2) / 4.0,
        ]
    }

    /// Partial transpose over qubit A (the first tensor factor).
    pub fn partial_transpose_a(&self) -> [[f64; 4]; 4] {
        partial_transpose(&self.rho, true)
    }

    /// Partial transpose over qubit R_S1 (the second tensor factor).
    pub fn partial_transpose_b(&self) -> [[f64; 4]; 4] {
        partial_transpose(&self.rho, false)
    }

    /// Closed-form eigenvalues of the partial transpose:
    /// {(1+k²)/4, (1+k²)/4, (1−k²)/4 + k/2, (1−k²)/4 − k/2}.
    pub fn pt_spectrum(&self) -> [f64; 4] {
        let k = self.k_value;
        let outer = (1.0 + k * k) / 4.0;
        let inner = (1.0 - k * k) / 4.0;
        [outer, outer, inner + k / 2.0, inner - k / 2.0]
    }

    /// Reduced state of one qubit (both marginals coincide by symmetry).
    pub fn reduced_a(&self) -> [f64; 2] {
        [self.rho[0][0] + self.rho[1][1], self.rho[2][2] + self.rho[3][3]]
    }
}

/// Partial transpose of a two-qubit matrix in index convention
/// row = 2a + r; `over_first` transposes the A factor.
fn partial_transpose(rho: &[[f64; 4]; 4], over_first: bool) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for a in 0..2 {
        for r in 0..2 {
            for ap in 0..2 {
                for rp in 0..2 {
                    let (row, col) = (2 * a + r, 2 * ap + rp);
                    let (src_row, src_col) = if over_first {
                        (2 * ap + r, 2 * a + rp)
                    } else {
                        (2 * a + rp, 2 * ap + r)
                    };
                    out[row][col] = rho[src_row][src_col];
                }
            }
        }
    }
    out
}

/// Entanglement negativity 𝒩 = (‖ρ^{T_A}‖₁ − 1)/2: the partial transpose is
/// diagonalized numerically and the negative part summed. For the channel
/// states of this model the result equals max(0, (k² + 2|k| − 1)/4).
pub fn negativity(state: &ChannelState) -> f64 {
    let pt = state.partial_transpose_a();
    let eigs = jacobi_eigenvalues(&pt);
    eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum()
}

/// Mutual information I = S_A + S_{R_S1} − S_{AR_S1} = 2 ln 2 − S(ρ), in nats.
pub fn mutual_information(state: &ChannelState) -> f64 {
    let s: f64 = state.spectrum().iter().map(|&l| entropy_term(l)).sum();
    (2.0 * std::f64::consts::LN_2 - s).max(0.0)
}

fn entropy_term(l: f64) -> f64 {
    if l > 0.0 {
        -l * l.ln()
    } else {
        0.0
    }
}

/// Regime of a peak response magnitude: Quantum above the negativity
/// threshold, NoSignal at or below ns_factor·|g|, Classical between.
pub fn classify(k_max: f64, params: &ModelParams, ns_factor: f64) -> Regime {
    if k_max > K_THRESHOLD {
        Regime::Quantum
    } else if k_max <= ns_factor * params.g.abs() {
        Regime::NoSignal
    } else {
        Regime::Classical
    }
}

/// Eigenvalues of a 4x4 real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(m: &[[f64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs = [a[0][0], a[1][1], a[2][2], a[3][3]];
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn density_entries() {
        let s = density_from_k(0.5).unwrap();
        assert_relative_eq!(s.rho[0][0], 0.3125);
        assert_relative_eq!(s.rho[1][1], 0.1875);
        assert_relative_eq!(s.rho[2][2], 0.1875);
        assert_relative_eq!(s.rho[3][3], 0.3125);
        assert_relative_eq!(s.rho[0][3], 0.25);
        assert_relative_eq!(s.rho[3][0], 0.25);
        assert_relative_eq!(s.trace(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn density_limits() {
        // k = 0: maximally mixed.
        let s = density_from_k(0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 0.25 } else { 0.0 };
                assert_eq!(s.rho[i][j], expected);
            }
        }
        // k = 1: Bell projector.
        let s = density_from_k(1.0).unwrap();
        for (i, j, expected) in [(0, 0, 0.5), (3, 3, 0.5), (0, 3, 0.5), (1, 1, 0.0)] {
            assert_relative_eq!(s.rho[i][j], expected);
        }
        assert!(density_from_k(1.1).is_err());
        assert!(density_from_k(-1.000001).is_err());
    }

    #[test]
    fn marginals_maximally_mixed() {
        for k in [-0.9, -0.3, 0.0, 0.5, 1.0] {
            let s = density_from_k(k).unwrap();
            let ra = s.reduced_a();
            assert_relative_eq!(ra[0], 0.5, epsilon = 1e-15);
            assert_relative_eq!(ra[1], 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn negativity_examples() {
        assert_relative_eq!(
            negativity(&density_from_k(0.5).unwrap()),
            0.0625,
            epsilon = 1e-13
        );
        // Exactly at the threshold the minimum PT eigenvalue touches zero.
        let s = density_from_k(K_THRESHOLD).unwrap();
        assert!(negativity(&s) < 1e-13);
        assert_relative_eq!(negativity(&density_from_k(1.0).unwrap()), 0.5, epsilon = 1e-13);
    }

    #[test]
    fn negativity_threshold_bracket() {
        // Scanning k in millesimal steps, the first positive negativity
        // brackets √2 - 1 within one step.
        let mut first_positive = None;
        for i in 0..=1000 {
            let k = i as f64 * 1e-3;
            if negativity(&density_from_k(k).unwrap()) > 0.0 {
                first_positive = Some(k);
                break;
            }
        }
        let k = first_positive.expect("negativity must turn on before k = 1");
        assert!(k - 1e-3 <= K_THRESHOLD && K_THRESHOLD <= k, "first positive at {k}");
    }

    #[test]
    fn mutual_information_examples() {
        assert_relative_eq!(
            mutual_information(&density_from_k(1.0).unwrap()),
            2.0 * std::f64::consts::LN_2,
            epsilon = 1e-14
        );
        assert_eq!(mutual_information(&density_from_k(0.0).unwrap()), 0.0);
        // Entropy of the spectrum {0.1875, 0.1875, 0.5625, 0.0625}.
        assert_relative_eq!(
            mutual_information(&density_from_k(0.5).unwrap()),
            0.261624071882274,
            epsilon = 1e-12
        );
    }

    #[test]
    fn mutual_information_monotone() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let k = i as f64 * 0.01;
            let mi = mutual_information(&density_from_k(k).unwrap());
            assert!(mi > prev, "MI must strictly increase in |k| (k={k})");
            prev = mi;
        }
    }

    #[test]
    fn classify_examples() {
        let ns = crate::model::NS_FACTOR_DEFAULT;
        let p = ModelParams::new(0.1, 0.01).unwrap();
        assert_eq!(classify(0.45, &p, ns), Regime::Quantum);
        assert_eq!(classify(0.30, &p, ns), Regime::Classical);
        assert_eq!(classify(0.0099, &p, ns), Regime::NoSignal);
        // g = 0 leaves only the exact zero in the no-signal bin.
        let p0 = ModelParams::new(0.1, 0.0).unwrap();
        assert_eq!(classify(0.0, &p0, ns), Regime::NoSignal);
        assert_eq!(classify(1e-9, &p0, ns), Regime::Classical);
    }

    #[test]
    fn jacobi_against_known_matrix() {
        // diag(1,2,3) plus a symmetric perturbation with known spectrum.
        let m = [
            [2.0, 1.0, 0.0, 0.0],
            [1.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 4.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ];
        let eigs = jacobi_eigenvalues(&m);
        let expected = [-1.0, 1.0, 3.0, 4.0];
        for (a, b) in eigs.iter().zip(expected) {
            assert_relative_eq!(*a, b, epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn pt_spectrum_closed_form_matches_jacobi(k in -1.0f64..1.0) {
            let s = density_from_k(k).unwrap();
            let numeric = jacobi_eigenvalues(&s.partial_transpose_a());
            let mut closed = s.pt_spectrum();
            closed.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (a, b) in numeric.iter().zip(closed) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn metrics_even_in_k(k in 0.0f64..1.0) {
            let plus = density_from_k(k).unwrap();
            let minus = density_from_k(-k).unwrap();
            prop_assert!((negativity(&plus) - negativity(&minus)).abs() < 1e-13);
            prop_assert!(
                (mutual_information(&plus) - mutual_information(&minus)).abs() < 1e-13
            );
        }

        #[test]
        fn pt_over_either_qubit_same_spectrum(k in -1.0f64..1.0) {
            let s = density_from_k(k).unwrap();
            let a = jacobi_eigenvalues(&s.partial_transpose_a());
            let b = jacobi_eigenvalues(&s.partial_transpose_b());
            for (x, y) in a.iter().zip(b) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        #[test]
        fn negativity_positive_iff_above_threshold(k in 0.0f64..1.0) {
            prop_assume!((k - K_THRESHOLD).abs() > 1e-9);
            let n = negativity(&density_from_k(k).unwrap());
            if k > K_THRESHOLD {
                prop_assert!(n > 0.0);
            } else {
                prop_assert!(n.abs() < 1e-13);
            }
        }

        #[test]
        fn density_psd_and_normalized(k in -1.0f64..1.0) {
            let s = density_from_k(k).unwrap();
            prop_assert!((s.trace() - 1.0).abs() < 1e-12);
            for e in jacobi_eigenvalues(&s.rho) {
                prop_assert!(e >= -1e-12);
            }
            // Closed-form spectrum agrees with the numerical route.
            let mut closed = s.spectrum();
            closed.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (a, b) in jacobi_eigenvalues(&s.rho).iter().zip(closed) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
