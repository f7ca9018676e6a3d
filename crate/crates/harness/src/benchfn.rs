//! Optimizer comparison on continuous benchmark functions.

use swan_core::rng::derive_seed;
use swan_core::swarm::{
    csa_run, ga_run, pso_run, swan_run, Benchmark, BenchmarkKind, CsaParams, GaParams, PsoParams, SwanParams,
};
use swan_core::NoOps;

use crate::config::Optimizer;
use crate::error::HarnessError;

/// Final objective of one run of `optimizer` on `kind` with `budget` evaluations.
pub fn run_benchmark(
    kind: BenchmarkKind,
    dim: usize,
    optimizer: Optimizer,
    budget: u64,
    seed: u64,
) -> Result<f64, HarnessError> {
    let mut f = Benchmark::new(kind, dim)?;
    let mut ops = NoOps;
    let r = match optimizer {
        Optimizer::Swan => swan_run(&mut f, &SwanParams { budget, ..SwanParams::default() }, seed, &mut ops)?,
        Optimizer::Csa => csa_run(&mut f, &CsaParams { budget, ..CsaParams::default() }, seed, &mut ops)?,
        Optimizer::Pso => pso_run(&mut f, &PsoParams { budget, ..PsoParams::default() }, seed, &mut ops)?,
        Optimizer::Ga => ga_run(&mut f, &GaParams { budget, ..GaParams::default() }, seed, &mut ops)?,
        Optimizer::Exhaustive => {
            return Err(HarnessError::Invalid("benchmarks need a swarm optimizer".into()));
        }
    };
    Ok(r.best_f)
}

/// Summary of repeated runs on one function.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub kind: BenchmarkKind,
    pub optimizer: Optimizer,
    pub finals: Vec<f64>,
}

impl BenchSummary {
    pub fn median(&self) -> f64 {
        median(&self.finals)
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Runs `seeds` independent repetitions. Repetition `s` uses
/// `derive_seed(master, s)` for every optimizer, so runs are paired.
pub fn bench_repeated(
    kind: BenchmarkKind,
    dim: usize,
    optimizer: Optimizer,
    budget: u64,
    seeds: u64,
    master: u64,
) -> Result<BenchSummary, HarnessError> {
    let finals = (0..seeds)
        .map(|s| run_benchmark(kind, dim, optimizer, budget, derive_seed(master, s)))
        .collect::<Result<_, _>>()?;
    Ok(BenchSummary { kind, optimizer, finals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&[]).is_nan());
    }
}
