//! Swarm optimizers over continuous boxes: SWAN, and cuckoo search,
//! particle swarm and genetic baselines.
//!
//! Every optimizer minimizes an [`Objective`] under a hard budget of `rho`
//! evaluations (an objective may charge more than one per call, see
//! [`Objective::cost`]). No evaluation starts that would push the counter
//! past `rho`. Arithmetic spent producing new positions is charged to
//! [`Process::SolutionGen`](crate::Process::SolutionGen); random-variate
//! generation is not counted.

mod bench;
mod csa;
mod cspts;
mod engine;
mod ga;
mod levy;
mod pso;
mod swan;
mod triad;

use std::cmp::Ordering;

pub use bench::{benchmark_suite, Benchmark, BenchmarkKind};
pub use csa::{csa_run, CsaParams};
pub use cspts::{quantize_candidate, two_stage_expand, DirectObjective, TwoStageObjective};
pub use engine::{OperatorTally, SolutionGenCost};
pub use ga::{ga_run, GaParams};
pub use levy::{levy_step, mantegna_sigma, LevySampler};
pub use pso::{pso_run, PsoParams};
pub use swan::{swan_run, Swan, SwanParams};
pub use triad::{triad_geometry, triad_reference, triad_scales, TriadGeometry};

/// How out-of-box coordinates are mapped back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Clamp,
    /// Periodic coordinates, wrapped into `[lo, hi)`.
    Wrap,
}

/// A minimization problem on a box.
pub trait Objective {
    fn dim(&self) -> usize;

    /// `(lo, hi)` per coordinate.
    fn bounds(&self) -> Vec<(f64, f64)>;

    fn boundary(&self) -> Boundary {
        Boundary::Clamp
    }

    fn evaluate(&mut self, x: &[f64]) -> f64;

    /// Budget units consumed by one call to [`evaluate`](Self::evaluate).
    fn cost(&self) -> u64 {
        1
    }
}

/// `1 / (1 + f)` for `f >= 0`, `1 + |f|` otherwise. Strictly decreasing.
pub fn fitness(f: f64) -> f64 {
    if f >= 0.0 {
        1.0 / (1.0 + f)
    } else {
        1.0 + f.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nest {
    pub position: Vec<f64>,
    pub f: f64,
    pub fitness: f64,
}

impl Nest {
    /// `Greater` when `self` is fitter. Fitness ties, which occur once
    /// `1 / (1 + f)` or `1 + |f|` runs out of resolution, are broken by the
    /// raw objective.
    pub fn cmp_fitness(&self, other: &Nest) -> Ordering {
        self.fitness
            .total_cmp(&other.fitness)
            .then_with(|| other.f.total_cmp(&self.f))
    }

    pub fn beats(&self, other: &Nest) -> bool {
        self.cmp_fitness(other) == Ordering::Greater
    }

    pub fn new(position: Vec<f64>, f: f64) -> Self {
        Self {
            position,
            f,
            fitness: fitness(f),
        }
    }
}

/// Best-so-far state after a generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub generation: u64,
    pub tau: u64,
    pub best_f_linear: f64,
    /// `10 log10(best_f_linear)`; NaN for non-positive objectives.
    pub best_f_db: f64,
}

impl TraceRecord {
    fn new(generation: u64, tau: u64, best_f: f64) -> Self {
        Self {
            generation,
            tau,
            best_f_linear: best_f,
            best_f_db: if best_f > 0.0 { crate::signal::to_db(best_f) } else { f64::NAN },
        }
    }
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_f: f64,
    /// Budget units consumed.
    pub evaluations: u64,
    /// Completed generations (the initial population is generation 0).
    pub generations: u64,
    pub trace: Vec<TraceRecord>,
    /// Per-generation draws of the best-exploitation count (SWAN only).
    pub ng_draws: Vec<usize>,
    pub tally: OperatorTally,
}
