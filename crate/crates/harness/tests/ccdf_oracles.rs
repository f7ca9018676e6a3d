//! CCDF estimation checked against trivial cases and an independent
//! single-antenna simulator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use swan_harness::ccdf::{binomial_half_width, run_ccdf, run_trials, CcdfCurve};
use swan_harness::{ExperimentConfig, Optimizer, Scheme};

#[test]
fn single_trial_is_a_step() {
    let cfg = ExperimentConfig {
        scheme: Scheme::None,
        trials: 1,
        ..ExperimentConfig::default()
    };
    let papr = run_trials(&cfg).unwrap()[0].papr_db;
    let c = run_ccdf(&cfg).unwrap();
    for (x, p) in c.thresholds.iter().zip(&c.exceed_prob) {
        assert_eq!(*p, if *x < papr { 1.0 } else { 0.0 });
    }
}

#[test]
fn search_never_loses_to_the_plain_signal() {
    let base = ExperimentConfig {
        n_c: 64,
        m: 4,
        u: 2,
        d: 4,
        n_tx: 2,
        n_rx: 2,
        trials: 300,
        seed: 12,
        ..ExperimentConfig::default()
    };
    let plain = run_trials(&ExperimentConfig { scheme: Scheme::None, ..base.clone() }).unwrap();
    let exact = run_trials(&base).unwrap();
    let swan = run_trials(&ExperimentConfig { optimizer: Optimizer::Swan, rho: 150, ..base.clone() }).unwrap();
    for ((p, e), s) in plain.iter().zip(&exact).zip(&swan) {
        assert!(e.papr <= p.papr * (1.0 + 1e-12));
        assert!(e.papr <= s.papr * (1.0 + 1e-12));
    }
    let curves: Vec<CcdfCurve> = [&plain, &exact, &swan]
        .iter()
        .map(|o| CcdfCurve::from_samples(&o.iter().map(|t| t.papr_db).collect::<Vec<_>>()).unwrap())
        .collect();
    for i in 0..curves[0].thresholds.len() {
        assert!(curves[1].exceed_prob[i] <= curves[0].exceed_prob[i]);
        assert!(curves[1].exceed_prob[i] <= curves[2].exceed_prob[i]);
    }
}

/// Square 64-QAM with unit mean energy, drawn uniformly, transformed by a
/// direct inverse DFT over the `n_c` occupied bins of a length `n_c l`
/// transform.
fn naive_siso_papr_db(trials: usize, n_c: usize, l: usize, seed: u64) -> Vec<f64> {
    let n = n_c * l;
    let twiddle: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, 2.0 * PI * i as f64 / n as f64)).collect();
    let scale = (2.0 * (64.0 - 1.0) / 3.0f64).sqrt();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let sym: Vec<Complex64> = (0..n_c)
                .map(|_| {
                    let i = 2 * rng.random_range(0..8) as i32 - 7;
                    let q = 2 * rng.random_range(0..8) as i32 - 7;
                    Complex64::new(i as f64, q as f64) / scale
                })
                .collect();
            let power: Vec<f64> = (0..n)
                .map(|t| sym.iter().enumerate().map(|(k, s)| s * twiddle[(k * t) % n]).sum::<Complex64>().norm_sqr())
                .collect();
            let peak = power.iter().cloned().fold(0.0, f64::max);
            let mean = power.iter().sum::<f64>() / n as f64;
            10.0 * (peak / mean).log10()
        })
        .collect()
}

#[test]
fn siso_curve_matches_an_independent_simulator() {
    let trials = 10_000;
    let cfg = ExperimentConfig {
        scheme: Scheme::None,
        n_tx: 1,
        n_rx: 1,
        trials,
        seed: 31,
        ..ExperimentConfig::default()
    };
    let ours = run_ccdf(&cfg).unwrap();
    let theirs = CcdfCurve::from_samples(&naive_siso_papr_db(trials, 256, 4, 99)).unwrap();
    // Two independent estimates: the difference has twice the variance; one
    // extra sample of slack covers the discreteness of the counts.
    let z99 = 2.576;
    for i in 0..ours.thresholds.len() {
        let p = 0.5 * (ours.exceed_prob[i] + theirs.exceed_prob[i]);
        let tol = std::f64::consts::SQRT_2 * binomial_half_width(p, trials, z99) + 1.0 / trials as f64;
        let diff = (ours.exceed_prob[i] - theirs.exceed_prob[i]).abs();
        assert!(diff <= tol, "threshold {}: {} vs {}", ours.thresholds[i], ours.exceed_prob[i], theirs.exceed_prob[i]);
    }
}
