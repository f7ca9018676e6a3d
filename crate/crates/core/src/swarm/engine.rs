//! Budgeted evaluation and shared population plumbing.

use rand::Rng;

use super::{Boundary, Nest, Objective, RunResult, TraceRecord};
use crate::error::{Error, Result};
use crate::opcount::{OpSink, Process};

/// Invocation counts of every position-producing operator in a run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OperatorTally {
    /// Uniform draws in the box (initialization, random resets).
    pub uniform: u64,
    /// Levy flight toward the best position.
    pub levy_toward: u64,
    /// Levy flight scaled by the box range.
    pub levy_free: u64,
    /// Copies without arithmetic (zero-step moves).
    pub copies: u64,
    pub triad: u64,
    pub best_exploit: u64,
    pub worst_mutation: u64,
    pub pso_update: u64,
    /// Genes reset by GA mutation.
    pub ga_gene_reset: u64,
}

/// Real operation cost of each operator for an `n`-dimensional position.
///
/// `per_*` functions return `(real mults, real adds)`.
#[derive(Debug, Clone, Copy)]
pub struct SolutionGenCost {
    pub n: u64,
}

impl SolutionGenCost {
    /// `lo + r (hi - lo)`, range precomputed.
    pub fn uniform(&self) -> (u64, u64) {
        (self.n, self.n)
    }
    /// `z + alpha (z_best - z) w`.
    pub fn levy_toward(&self) -> (u64, u64) {
        (2 * self.n, 2 * self.n)
    }
    /// `z + (alpha s) w`, `alpha s` precomputed.
    pub fn levy_free(&self) -> (u64, u64) {
        (self.n, self.n)
    }
    /// Side lengths, incenter, epsilon, weighted reference, three scales
    /// and three Gaussian samples.
    pub fn triad(&self) -> (u64, u64) {
        let n = self.n;
        let sides = (3 * n, 3 * (2 * n - 1));
        let incenter = (4 * n, 2 * n + 2);
        let eps = (6, 3);
        let reference = (2 * n + 2, n + 2);
        let scales = (13, 5);
        let samples = (3 * n, 3 * n);
        let parts = [sides, incenter, eps, reference, scales, samples];
        parts.iter().fold((0, 0), |a, p| (a.0 + p.0, a.1 + p.1))
    }
    /// `z_best + (z_best + 0.25 psi) w`.
    pub fn best_exploit(&self) -> (u64, u64) {
        (2 * self.n, 2 * self.n)
    }
    /// `0.5 (h + h_w) psi2 psi3`.
    pub fn worst_mutation(&self) -> (u64, u64) {
        (3 * self.n, self.n)
    }
    /// Constricted velocity update plus position step.
    pub fn pso_update(&self) -> (u64, u64) {
        (5 * self.n, 5 * self.n)
    }
    /// One gene reset, `lo + r (hi - lo)`.
    pub fn ga_gene_reset(&self) -> (u64, u64) {
        (1, 1)
    }

    /// Total cost implied by a tally.
    pub fn total(&self, t: &OperatorTally) -> (u64, u64) {
        let items = [
            (t.uniform, self.uniform()),
            (t.levy_toward, self.levy_toward()),
            (t.levy_free, self.levy_free()),
            (t.triad, self.triad()),
            (t.best_exploit, self.best_exploit()),
            (t.worst_mutation, self.worst_mutation()),
            (t.pso_update, self.pso_update()),
            (t.ga_gene_reset, self.ga_gene_reset()),
        ];
        items
            .iter()
            .fold((0, 0), |a, (k, (m, ad))| (a.0 + k * m, a.1 + k * ad))
    }
}

/// Marker for an exhausted budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

pub(crate) type Step<T = ()> = std::result::Result<T, Exhausted>;

/// Objective wrapper enforcing the budget, the boundary rule and best-ever
/// tracking, and charging operator costs.
pub(crate) struct Engine<'a, O: Objective + ?Sized, C: OpSink> {
    obj: &'a mut O,
    ops: &'a mut C,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub range: Vec<f64>,
    boundary: Boundary,
    cost: u64,
    pub tau: u64,
    rho: u64,
    pub best: Option<Nest>,
    pub tally: OperatorTally,
    unit: SolutionGenCost,
    pub trace: Vec<TraceRecord>,
}

impl<'a, O: Objective + ?Sized, C: OpSink> Engine<'a, O, C> {
    /// Fails unless `rho` covers `n_initial` evaluations.
    pub fn new(obj: &'a mut O, ops: &'a mut C, rho: u64, n_initial: usize) -> Result<Self> {
        let n = obj.dim();
        if n == 0 {
            return Err(Error::invalid("objective has no dimensions"));
        }
        let bounds = obj.bounds();
        if bounds.len() != n || bounds.iter().any(|&(l, h)| !(l.is_finite() && h.is_finite() && h > l)) {
            return Err(Error::invalid("objective bounds must be finite with lo < hi"));
        }
        let cost = obj.cost().max(1);
        let minimum = cost * n_initial as u64;
        if rho < minimum {
            return Err(Error::invalid(format!(
                "budget {rho} is below one generation ({minimum} evaluations)"
            )));
        }
        let lo: Vec<f64> = bounds.iter().map(|b| b.0).collect();
        let hi: Vec<f64> = bounds.iter().map(|b| b.1).collect();
        let range = lo.iter().zip(&hi).map(|(l, h)| h - l).collect();
        Ok(Self {
            boundary: obj.boundary(),
            obj,
            ops,
            lo,
            hi,
            range,
            cost,
            tau: 0,
            rho,
            best: None,
            tally: OperatorTally::default(),
            unit: SolutionGenCost { n: n as u64 },
            trace: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn can_evaluate(&self) -> bool {
        self.tau + self.cost <= self.rho
    }

    pub fn apply_boundary(&self, x: &mut [f64]) {
        for (d, v) in x.iter_mut().enumerate() {
            let (l, h) = (self.lo[d], self.hi[d]);
            *v = match self.boundary {
                Boundary::Clamp => v.clamp(l, h),
                Boundary::Wrap => {
                    let w = l + (*v - l).rem_euclid(h - l);
                    if w >= h {
                        l
                    } else {
                        w
                    }
                }
            };
            if !v.is_finite() {
                *v = l;
            }
        }
    }

    /// Maps `x` into the box, evaluates it and updates the best-ever nest.
    pub fn eval(&mut self, mut x: Vec<f64>) -> Step<Nest> {
        if !self.can_evaluate() {
            return Err(Exhausted);
        }
        self.apply_boundary(&mut x);
        let f = self.obj.evaluate(&x);
        self.tau += self.cost;
        let nest = Nest::new(x, f);
        if self.best.as_ref().is_none_or(|b| nest.f < b.f) {
            self.best = Some(nest.clone());
        }
        Ok(nest)
    }

    fn charge(&mut self, cost: (u64, u64)) {
        self.ops.real_mul(Process::SolutionGen, cost.0);
        self.ops.real_add(Process::SolutionGen, cost.1);
    }

    pub fn uniform_position<R: Rng>(&mut self, rng: &mut R) -> Vec<f64> {
        self.tally.uniform += 1;
        self.charge(self.unit.uniform());
        (0..self.dim())
            .map(|d| self.lo[d] + rng.random::<f64>() * self.range[d])
            .collect()
    }

    pub fn charge_op(&mut self, select: fn(&mut OperatorTally) -> &mut u64, cost: fn(&SolutionGenCost) -> (u64, u64)) {
        *select(&mut self.tally) += 1;
        let c = cost(&self.unit);
        self.charge(c);
    }

    pub fn charge_ga_genes(&mut self, genes: u64) {
        self.tally.ga_gene_reset += genes;
        let c = self.unit.ga_gene_reset();
        self.charge((c.0 * genes, c.1 * genes));
    }

    /// Draws and evaluates `n` uniform nests.
    pub fn init_population<R: Rng>(&mut self, n: usize, rng: &mut R) -> Step<Vec<Nest>> {
        let mut pop = Vec::with_capacity(n);
        for _ in 0..n {
            let x = self.uniform_position(rng);
            pop.push(self.eval(x)?);
        }
        Ok(pop)
    }

    pub fn record(&mut self, generation: u64) {
        if let Some(b) = &self.best {
            self.trace.push(TraceRecord::new(generation, self.tau, b.f));
        }
    }

    pub fn finish(self, generations: u64, ng_draws: Vec<usize>) -> RunResult {
        let best = self.best.expect("budget covers at least one evaluation");
        RunResult {
            best_position: best.position,
            best_f: best.f,
            evaluations: self.tau,
            generations,
            trace: self.trace,
            ng_draws,
            tally: self.tally,
        }
    }
}

/// Index of the fittest nest; lowest index on ties.
pub(crate) fn best_index(pop: &[Nest]) -> usize {
    let mut b = 0;
    for (i, n) in pop.iter().enumerate() {
        if n.beats(&pop[b]) {
            b = i;
        }
    }
    b
}

/// Indices ordered from fittest to least fit, exact ties by index.
pub(crate) fn ranked(pop: &[Nest]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| pop[b].cmp_fitness(&pop[a]).then(a.cmp(&b)));
    idx
}
