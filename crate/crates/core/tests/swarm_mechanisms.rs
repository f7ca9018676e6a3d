//! Behavioural properties of the swarm optimizers.

use proptest::prelude::*;
use swan_core::swarm::{
    csa_run, ga_run, pso_run, swan_run, triad_geometry, triad_reference, triad_scales, Benchmark, BenchmarkKind,
    CsaParams, GaParams, LevySampler, Objective, PsoParams, Swan, SwanParams,
};
use swan_core::rng::rng_from_seed;
use swan_core::NoOps;

fn bench(kind_ix: usize) -> Benchmark {
    let kind = BenchmarkKind::ALL[kind_ix % BenchmarkKind::ALL.len()];
    let dim = if kind == BenchmarkKind::Easom { 2 } else { 3 };
    Benchmark::new(kind, dim).unwrap()
}

/// Counts calls and records every evaluated point.
struct Recorder {
    inner: Benchmark,
    points: Vec<Vec<f64>>,
}

impl Objective for Recorder {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn bounds(&self) -> Vec<(f64, f64)> {
        self.inner.bounds()
    }
    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.points.push(x.to_vec());
        self.inner.evaluate(x)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn best_so_far_never_worsens(kind in 0usize..5, seed: u64, budget in 40u64..800) {
        let mut f = bench(kind);
        let r = swan_run(&mut f, &SwanParams { budget, ..SwanParams::default() }, seed, &mut NoOps).unwrap();
        prop_assert!(r.trace.windows(2).all(|w| w[1].best_f_linear <= w[0].best_f_linear));
        prop_assert!(r.trace.windows(2).all(|w| w[1].tau > w[0].tau));
        prop_assert_eq!(r.trace.last().unwrap().best_f_linear, r.best_f);
        prop_assert!(r.evaluations <= budget);
    }

    #[test]
    fn population_keeps_its_size_and_its_best(kind in 0usize..5, seed: u64, n in 4usize..20) {
        let mut f = bench(kind);
        let params = SwanParams { n_nests: n, budget: 2000, ..SwanParams::default() };
        let mut ops = NoOps;
        let mut s = Swan::new(&mut f, params, seed, &mut ops).unwrap();
        s.initialize();
        prop_assert_eq!(s.population().len(), n);
        let pop_best = |s: &Swan<'_, Benchmark, NoOps>| s.population().iter().map(|x| x.f).fold(f64::INFINITY, f64::min);
        let mut best = pop_best(&s);
        for _ in 0..30 {
            let more = s.step_generation();
            prop_assert_eq!(s.population().len(), n);
            let now = pop_best(&s);
            prop_assert!(now <= best);
            best = now;
            if !more {
                break;
            }
        }
    }

    #[test]
    fn guarded_mutation_never_lowers_fitness(kind in 0usize..5, seed: u64, n_h in 1usize..8) {
        let mut f = bench(kind);
        let params = SwanParams { n_h, budget: 100_000, ..SwanParams::default() };
        let mut ops = NoOps;
        let mut s = Swan::new(&mut f, params, seed, &mut ops).unwrap();
        s.initialize();
        for _ in 0..10 {
            prop_assert!(s.levy_phase() && s.triad_step() && s.discovery() && s.best_exploit());
            let before: Vec<f64> = s.population().iter().map(|n| n.fitness).collect();
            prop_assert!(s.mutate_worst());
            for (b, a) in before.iter().zip(s.population()) {
                prop_assert!(a.fitness >= *b);
            }
        }
    }

    #[test]
    fn incenter_and_reference_geometry(
        ax in -5.0f64..5.0, ay in -5.0f64..5.0,
        bx in -5.0f64..5.0, by in -5.0f64..5.0,
        cx in -5.0f64..5.0, cy in -5.0f64..5.0,
        f1 in 0.01f64..1.0, f2 in 0.01f64..1.0, f3 in 0.01f64..1.0,
    ) {
        let (q1, q2, q3) = ([ax, ay], [bx, by], [cx, cy]);
        let area2 = ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)).abs();
        prop_assume!(area2 > 1e-3);
        let g = triad_geometry(&q1, &q2, &q3, [f1, f2, f3]);
        prop_assert!(!g.degenerate);
        // The incenter is equidistant (the in-radius) from all three side lines.
        let line_dist = |p: &[f64; 2], q: &[f64; 2]| {
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            ((g.gamma[0] - p[0]) * dy - (g.gamma[1] - p[1]) * dx).abs() / dx.hypot(dy)
        };
        let r = area2 / g.perimeter;
        for (p, q) in [(&q1, &q2), (&q2, &q3), (&q3, &q1)] {
            prop_assert!((line_dist(p, q) - r).abs() < 1e-9 * (1.0 + r));
        }
        // Inside: same orientation with respect to every edge.
        let side = |p: &[f64; 2], q: &[f64; 2]| (q[0] - p[0]) * (g.gamma[1] - p[1]) - (q[1] - p[1]) * (g.gamma[0] - p[0]);
        let s = [side(&q1, &q2), side(&q2, &q3), side(&q3, &q1)];
        prop_assert!(s.iter().all(|&v| v > 0.0) || s.iter().all(|&v| v < 0.0));
        prop_assert!((g.epsilon - r / (g.perimeter / 2.0)).abs() < 1e-9);

        let f = [f1, f2, f3];
        let star = triad_reference(&g.gamma, &q1, f);
        let lambda = f1 / (f1 + f2 + f3);
        for d in 0..2 {
            let on_segment = g.gamma[d] + lambda * (q1[d] - g.gamma[d]);
            prop_assert!((star[d] - on_segment).abs() < 1e-9);
        }
        prop_assert!((0.0..=1.0).contains(&lambda));

        let k = triad_scales(g.epsilon, f, 0.25, 0.75);
        prop_assert!(k[0] < k[1] && k[1] < k[2]);
    }

    #[test]
    fn every_optimizer_respects_its_budget(kind in 0usize..5, seed: u64, budget in 30u64..600) {
        let mut f = Recorder { inner: bench(kind), points: Vec::new() };
        let bounds = f.bounds();
        let r = csa_run(&mut f, &CsaParams { budget, ..CsaParams::default() }, seed, &mut NoOps).unwrap();
        prop_assert_eq!(r.evaluations, f.points.len() as u64);
        prop_assert!(r.evaluations <= budget);
        let r = pso_run(&mut f, &PsoParams { budget, ..PsoParams::default() }, seed, &mut NoOps).unwrap();
        prop_assert!(r.evaluations <= budget);
        let r = ga_run(&mut f, &GaParams { budget, ..GaParams::default() }, seed, &mut NoOps).unwrap();
        prop_assert!(r.evaluations <= budget);
        for p in &f.points {
            prop_assert!(p.iter().zip(&bounds).all(|(x, (lo, hi))| lo <= x && x <= hi));
        }
    }
}

#[test]
fn exploitation_count_is_uniform() {
    let mut f = Benchmark::new(BenchmarkKind::Sphere, 2).unwrap();
    let params = SwanParams { budget: u64::MAX / 2, ..SwanParams::default() };
    let mut ops = NoOps;
    let mut s = Swan::new(&mut f, params, 2024, &mut ops).unwrap();
    s.initialize();
    let draws = 100_000;
    for _ in 0..draws {
        assert!(s.best_exploit());
    }
    let mut counts = [0u64; 4];
    for &d in s.ng_draws() {
        counts[d] += 1;
    }
    let expected = draws as f64 / 4.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // Upper 1% point of chi-square with 3 degrees of freedom.
    assert!(chi2 < 11.345, "chi2 = {chi2}, counts = {counts:?}");
}

/// Least-squares slope of `log P(|L| > x)` against `log x` over the tail
/// between the 1% and 0.01% quantiles.
fn tail_slope(beta: f64, n: usize, seed: u64) -> f64 {
    let s = LevySampler::new(beta).unwrap();
    let mut rng = rng_from_seed(seed);
    let mut v: Vec<f64> = (0..n).map(|_| s.sample(&mut rng).abs()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    let (lo, hi) = (n / 10_000, n / 100);
    let pts: Vec<(f64, f64)> = (lo..hi)
        .step_by(((hi - lo) / 200).max(1))
        .map(|i| (v[i].ln(), ((i + 1) as f64 / n as f64).ln()))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let cov: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    cov / var
}

#[test]
fn levy_tail_exponent_matches_beta() {
    for beta in [1.3, 1.5, 1.8] {
        let slope = tail_slope(beta, 1_000_000, 99);
        assert!((-slope - beta).abs() <= 0.2, "beta {beta}: fitted tail exponent {}", -slope);
    }
}

#[test]
fn swan_beats_random_restarts_on_sphere() {
    let mut f = Benchmark::new(BenchmarkKind::Sphere, 4).unwrap();
    let r = swan_run(&mut f, &SwanParams { budget: 2000, ..SwanParams::default() }, 5, &mut NoOps).unwrap();
    assert!(r.best_f < 1e-2, "{}", r.best_f);
}
