//! Temporary development diagnostic (removed before release).

use num_complex::Complex64;
use telechan_oracle::brownian::{self, DisorderPath};
use telechan_oracle::config::OracleConfig;
use telechan_oracle::epr;
use telechan_oracle::evolve;
use telechan_oracle::majorana::MajoranaAlgebra;
use telechan_oracle::OracleConfig as _OC;

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn main() {
    let config = OracleConfig::symmetric(2, 2, 0.5, 0.05, 0.1, 5e-2, 1, 11);
    let alg = MajoranaAlgebra::new(2 * config.modes_per_party()).unwrap();
    let psi = epr::build_epr(&alg).unwrap();
    let terms = brownian::coupled_terms(&config, &alg);
    let dim = alg.dim();

    // 1) (H_L - H_R)|EPR> should vanish.
    let draws: Vec<f64> = (0..terms.n_draws).map(|i| 0.3 + 0.1 * i as f64).collect();
    let mut hl = vec![Complex64::new(0.0, 0.0); dim];
    let mut hr = vec![Complex64::new(0.0, 0.0); dim];
    evolve::apply_hamiltonian(&terms.left, &draws, &psi, &mut hl);
    evolve::apply_hamiltonian(&terms.right, &draws, &psi, &mut hr);
    let resid: f64 = hl
        .iter()
        .zip(&hr)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    println!("|(H_L - H_R)|EPR>| = {resid:.3e}  (|H_L EPR| = {:.3e})", norm(&hl));

    // 2) chi_R |EPR> = i chi_L |EPR> for each pair.
    let pairs = alg.n_modes() / 2;
    for m in 0..pairs {
        let mut l = vec![Complex64::new(0.0, 0.0); dim];
        let mut r = vec![Complex64::new(0.0, 0.0); dim];
        alg.chi(m).accumulate(Complex64::new(0.0, 1.0), &psi, &mut l);
        alg.chi(pairs + m).accumulate(Complex64::new(1.0, 0.0), &psi, &mut r);
        let d: f64 = l.iter().zip(&r).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        println!("pair {m}: |chi_R - i chi_L| EPR = {d:.3e}");
    }

    // 3) K_kubo vs K_size at a few slice counts.
    for n_slices in [0usize, 1, 2, 5, 20] {
        let mut c = config;
        c.t_l = n_slices as f64 * c.dt_trotter;
        c.t_r = c.t_l;
        let cmp = telechan_oracle::size_representation_response(&c, true).unwrap();
        println!(
            "slices={n_slices}: k_size={:+.9e} k_kubo={:+.9e} diff={:.3e}",
            cmp.k_size.per_realization[0],
            cmp.k_kubo.as_ref().unwrap().per_realization[0],
            cmp.max_abs_diff.unwrap()
        );
    }

    // 4) Free-theory protocol readout, to pin the Bell/readout convention.
    let free = OracleConfig::symmetric(2, 0, 0.0, 0.2, 0.0, 1e-3, 1, 0);
    let out = telechan_oracle::run_protocol(&free).unwrap();
    println!("free protocol K = {:+.6e} (-sin g = {:+.6e})", out.k.k.mean, -(0.2f64).sin());
    for (i, row) in out.rho.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| format!("{:+.4}{:+.4}i", c.re, c.im)).collect();
        println!("rho[{i}] = {}", cells.join("  "));
    }

    let _ = DisorderPath { draws: vec![], n_draws_per_slice: 0, n_slices: 0 };
}
