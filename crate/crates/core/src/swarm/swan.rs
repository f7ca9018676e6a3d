//! SWAN: cuckoo search extended with best-triad mating, best-nest
//! exploitation and guarded mutation of the least-fit nests.
//!
//! One generation runs, in order:
//!
//! 1. Levy phase (`N` evaluations). Every non-best nest flies toward the
//!    best, `z + alpha (z_best - z) w`; the best nest flies freely,
//!    `z + alpha s w` with `s` the box range. Greedy replacement.
//! 2. Triad mating (3 evaluations, needs `N >= 3`). Three Gaussian samples
//!    around a fitness-weighted point between the incenter of the top three
//!    nests and the best one; the best three of old and new are kept.
//! 3. Discovery (`N` evaluations). The `round(p_a N)` least-fit nests compete
//!    with `N` Levy flights from random nests; the fittest fill their slots.
//! 4. Best exploitation (`N_G` evaluations, `N_G` uniform on `0..=3`).
//!    Uniform walks from the best nest replace random non-best nests
//!    unconditionally.
//! 5. Guarded mutation (`N_H` evaluations). Each of the `N_H` least-fit
//!    nests proposes `0.5 (h + h_worst) psi2 psi3` and keeps it only if
//!    fitter.
//!
//! A full generation therefore costs `2N + 3 + N_G + N_H` evaluations.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::engine::{best_index, ranked, Engine, OperatorTally, SolutionGenCost, Step};
use super::levy::LevySampler;
use super::triad::{triad_geometry, triad_reference, triad_scales};
use super::{Nest, Objective, RunResult};
use crate::error::{Error, Result};
use crate::opcount::OpSink;
use crate::rng::{rng_from_seed, SimRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwanParams {
    pub n_nests: usize,
    /// Fraction of nests rediscovered per generation, in `(0, 1)`.
    pub p_a: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Triad excess-fitness weight, in `[0.10, 0.45]`.
    pub phi: f64,
    /// Triad base weight, in `[0.55, 0.90]`.
    pub nu: f64,
    /// Nests mutated per generation, `< n_nests`.
    pub n_h: usize,
    /// Total evaluation budget.
    pub budget: u64,
    /// Scale the triad steps by the semi-perimeter of the triangle.
    pub geometric_triad: bool,
}

impl Default for SwanParams {
    fn default() -> Self {
        Self {
            n_nests: 11,
            p_a: 0.25,
            alpha: 0.01,
            beta: 1.5,
            phi: 0.25,
            nu: 0.75,
            n_h: 3,
            budget: 270,
            geometric_triad: false,
        }
    }
}

impl SwanParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_nests == 0 {
            return Err(Error::invalid("n_nests must be positive"));
        }
        if !(self.p_a > 0.0 && self.p_a < 1.0) {
            return Err(Error::invalid(format!("p_a = {} outside (0, 1)", self.p_a)));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid("alpha must be finite and nonnegative"));
        }
        if !(0.10..=0.45).contains(&self.phi) {
            return Err(Error::invalid(format!("phi = {} outside [0.10, 0.45]", self.phi)));
        }
        if !(0.55..=0.90).contains(&self.nu) {
            return Err(Error::invalid(format!("nu = {} outside [0.55, 0.90]", self.nu)));
        }
        if self.n_h >= self.n_nests {
            return Err(Error::invalid(format!(
                "n_h = {} must be below n_nests = {}",
                self.n_h, self.n_nests
            )));
        }
        LevySampler::new(self.beta)?;
        Ok(())
    }

    /// Nests replaced by discovery each generation.
    pub fn n_discovered(&self) -> usize {
        ((self.p_a * self.n_nests as f64).round() as usize).clamp(1, self.n_nests)
    }
}

/// `z + alpha (z_best - z) w`.
pub fn levy_toward(z: &[f64], z_best: &[f64], alpha: f64, w: &[f64]) -> Vec<f64> {
    z.iter()
        .zip(z_best)
        .zip(w)
        .map(|((z, b), w)| z + alpha * (b - z) * w)
        .collect()
}

/// `z_best + (z_best + 0.25 psi1) w`.
pub fn best_exploit_proposal(z_best: &[f64], psi1: &[f64], w: &[f64]) -> Vec<f64> {
    z_best
        .iter()
        .zip(psi1)
        .zip(w)
        .map(|((b, p), w)| b + (b + 0.25 * p) * w)
        .collect()
}

/// `0.5 (h + h_worst) psi2 psi3`.
pub fn worst_mutation_proposal(h: &[f64], h_worst: &[f64], psi2: &[f64], psi3: &[f64]) -> Vec<f64> {
    (0..h.len())
        .map(|d| 0.5 * (h[d] + h_worst[d]) * psi2[d] * psi3[d])
        .collect()
}

/// Levy flight from `origin`: toward `best` unless the origin sits on it,
/// in which case a free flight scaled by the box range.
pub(crate) fn levy_from<O: Objective + ?Sized, C: OpSink>(
    eng: &mut Engine<'_, O, C>,
    rng: &mut SimRng,
    levy: &LevySampler,
    alpha: f64,
    origin: &[f64],
    best: &[f64],
) -> Vec<f64> {
    let mut w = vec![0.0; origin.len()];
    levy.fill(&mut w, rng);
    if origin == best {
        eng.charge_op(|t| &mut t.levy_free, SolutionGenCost::levy_free);
        (0..origin.len())
            .map(|d| origin[d] + alpha * eng.range[d] * w[d])
            .collect()
    } else {
        eng.charge_op(|t| &mut t.levy_toward, SolutionGenCost::levy_toward);
        levy_toward(origin, best, alpha, &w)
    }
}

/// Levy phase with greedy replacement. With `best_moves == false` the best
/// nest is re-evaluated in place (a zero step).
pub(crate) fn levy_phase<O: Objective + ?Sized, C: OpSink>(
    eng: &mut Engine<'_, O, C>,
    pop: &mut [Nest],
    rng: &mut SimRng,
    levy: &LevySampler,
    alpha: f64,
    best_moves: bool,
) -> Step {
    let b = best_index(pop);
    let z_best = pop[b].position.clone();
    for i in 0..pop.len() {
        let prop = if i == b && !best_moves {
            eng.charge_op(|t| &mut t.copies, |_| (0, 0));
            z_best.clone()
        } else {
            let origin = pop[i].position.clone();
            levy_from(eng, rng, levy, alpha, &origin, &z_best)
        };
        let cand = eng.eval(prop)?;
        if cand.beats(&pop[i]) {
            pop[i] = cand;
        }
    }
    Ok(())
}

/// Abandons the `n_a` least-fit nests in favour of the fittest among them
/// and `pop.len()` Levy flights from random nests.
pub(crate) fn discovery<O: Objective + ?Sized, C: OpSink>(
    eng: &mut Engine<'_, O, C>,
    pop: &mut [Nest],
    rng: &mut SimRng,
    levy: &LevySampler,
    alpha: f64,
    n_a: usize,
) -> Step {
    let order = ranked(pop);
    let mut slots: Vec<usize> = order[order.len() - n_a..].to_vec();
    slots.sort_unstable();
    let z_best = pop[order[0]].position.clone();
    let mut pool: Vec<Nest> = slots.iter().map(|&i| pop[i].clone()).collect();
    let mut result = Ok(());
    for _ in 0..pop.len() {
        let r = rng.random_range(0..pop.len());
        let origin = pop[r].position.clone();
        let prop = levy_from(eng, rng, levy, alpha, &origin, &z_best);
        match eng.eval(prop) {
            Ok(n) => pool.push(n),
            Err(e) => {
                result = Err(e);
                break;
            }
        }
    }
    pool.sort_by(|a, b| b.cmp_fitness(a));
    for (slot, nest) in slots.into_iter().zip(pool) {
        pop[slot] = nest;
    }
    result
}

/// Step-wise SWAN driver; [`swan_run`] runs it to the budget.
pub struct Swan<'a, O: Objective + ?Sized, C: OpSink> {
    eng: Engine<'a, O, C>,
    params: SwanParams,
    rng: SimRng,
    levy: LevySampler,
    pop: Vec<Nest>,
    generation: u64,
    ng_draws: Vec<usize>,
    last_recorded_tau: Option<u64>,
}

impl<'a, O: Objective + ?Sized, C: OpSink> Swan<'a, O, C> {
    /// Validates the parameters and budget. No evaluation is made.
    pub fn new(obj: &'a mut O, params: SwanParams, seed: u64, ops: &'a mut C) -> Result<Self> {
        params.validate()?;
        let eng = Engine::new(obj, ops, params.budget, params.n_nests)?;
        Ok(Self {
            eng,
            params,
            rng: rng_from_seed(seed),
            levy: LevySampler::new(params.beta)?,
            pop: Vec::new(),
            generation: 0,
            ng_draws: Vec::new(),
            last_recorded_tau: None,
        })
    }

    pub fn population(&self) -> &[Nest] {
        &self.pop
    }

    pub fn tau(&self) -> u64 {
        self.eng.tau
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn best(&self) -> Option<&Nest> {
        self.eng.best.as_ref()
    }

    pub fn tally(&self) -> OperatorTally {
        self.eng.tally
    }

    pub fn ng_draws(&self) -> &[usize] {
        &self.ng_draws
    }

    fn done(r: Step) -> bool {
        r.is_ok()
    }

    /// Evaluates the initial population. Guaranteed to fit the budget.
    pub fn initialize(&mut self) {
        let pop = self
            .eng
            .init_population(self.params.n_nests, &mut self.rng)
            .expect("budget validated against the initial population");
        self.pop = pop;
        self.record();
    }

    fn record(&mut self) {
        if self.last_recorded_tau != Some(self.eng.tau) {
            self.eng.record(self.generation);
            self.last_recorded_tau = Some(self.eng.tau);
        }
    }

    pub fn levy_phase(&mut self) -> bool {
        let r = levy_phase(&mut self.eng, &mut self.pop, &mut self.rng, &self.levy, self.params.alpha, true);
        Self::done(r)
    }

    /// Best-triad mating; a no-op returning `true` when `N < 3`.
    pub fn triad_step(&mut self) -> bool {
        Self::done(self.triad_inner())
    }

    fn triad_inner(&mut self) -> Step {
        if self.pop.len() < 3 {
            return Ok(());
        }
        let order = ranked(&self.pop);
        let slots = [order[0], order[1], order[2]];
        let q: Vec<&Nest> = slots.iter().map(|&i| &self.pop[i]).collect();
        let f = [q[0].fitness, q[1].fitness, q[2].fitness];
        let geo = triad_geometry(&q[0].position, &q[1].position, &q[2].position, f);
        let reference = triad_reference(&geo.gamma, &q[0].position, f);
        let mut kappa = triad_scales(geo.epsilon, f, self.params.phi, self.params.nu);
        if self.params.geometric_triad {
            kappa = kappa.map(|k| k * geo.perimeter / 2.0);
        }
        self.eng.charge_op(|t| &mut t.triad, SolutionGenCost::triad);
        let mut pool: Vec<Nest> = slots.iter().map(|&i| self.pop[i].clone()).collect();
        let mut result = Ok(());
        for k in kappa {
            let prop: Vec<f64> = reference
                .iter()
                .map(|&g| {
                    let z: f64 = StandardNormal.sample(&mut self.rng);
                    g + k * z
                })
                .collect();
            match self.eng.eval(prop) {
                Ok(n) => pool.push(n),
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        pool.sort_by(|a, b| b.cmp_fitness(a));
        for (slot, nest) in slots.into_iter().zip(pool) {
            self.pop[slot] = nest;
        }
        result
    }

    pub fn discovery(&mut self) -> bool {
        let n_a = self.params.n_discovered();
        let r = discovery(&mut self.eng, &mut self.pop, &mut self.rng, &self.levy, self.params.alpha, n_a);
        Self::done(r)
    }

    /// Draws `N_G` and replaces that many random non-best nests by uniform
    /// walks from the best one.
    pub fn best_exploit(&mut self) -> bool {
        Self::done(self.best_exploit_inner())
    }

    fn best_exploit_inner(&mut self) -> Step {
        let drawn = self.rng.random_range(0..4usize);
        self.ng_draws.push(drawn);
        let n_g = drawn.min(self.pop.len().saturating_sub(1));
        if n_g == 0 {
            return Ok(());
        }
        let b = best_index(&self.pop);
        let others: Vec<usize> = (0..self.pop.len()).filter(|&i| i != b).collect();
        let chosen: Vec<usize> = sample(&mut self.rng, others.len(), n_g)
            .into_iter()
            .map(|k| others[k])
            .collect();
        let z_best = self.pop[b].position.clone();
        let n = z_best.len();
        for i in chosen {
            let psi1: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut self.rng)).collect();
            let w: Vec<f64> = (0..n).map(|_| self.rng.random_range(-1.0..=1.0)).collect();
            self.eng.charge_op(|t| &mut t.best_exploit, SolutionGenCost::best_exploit);
            let nest = self.eng.eval(best_exploit_proposal(&z_best, &psi1, &w))?;
            self.pop[i] = nest;
        }
        Ok(())
    }

    /// Guarded mutation of the `N_H` least-fit nests.
    pub fn mutate_worst(&mut self) -> bool {
        Self::done(self.mutate_inner())
    }

    fn mutate_inner(&mut self) -> Step {
        if self.params.n_h == 0 {
            return Ok(());
        }
        let order = ranked(&self.pop);
        let worst = *order.last().expect("nonempty population");
        let h_worst = self.pop[worst].position.clone();
        let n = h_worst.len();
        for &i in order.iter().rev().take(self.params.n_h) {
            let psi2: Vec<f64> = (0..n).map(|_| self.rng.random_range(1.0..=2.0)).collect();
            let psi3: Vec<f64> = (0..n)
                .map(|_| if self.rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            self.eng.charge_op(|t| &mut t.worst_mutation, SolutionGenCost::worst_mutation);
            let prop = worst_mutation_proposal(&self.pop[i].position, &h_worst, &psi2, &psi3);
            let nest = self.eng.eval(prop)?;
            if nest.beats(&self.pop[i]) {
                self.pop[i] = nest;
            }
        }
        Ok(())
    }

    /// Runs one full generation; `false` once the budget ran out.
    pub fn step_generation(&mut self) -> bool {
        let ok = self.levy_phase()
            && self.triad_step()
            && self.discovery()
            && (self.pop.len() < 2 || self.best_exploit())
            && self.mutate_worst();
        if ok {
            self.generation += 1;
        }
        self.record();
        ok
    }

    pub fn finish(self) -> RunResult {
        self.eng.finish(self.generation, self.ng_draws)
    }
}

/// Runs SWAN until no further evaluation fits the budget.
pub fn swan_run<O: Objective + ?Sized, C: OpSink>(
    obj: &mut O,
    params: &SwanParams,
    seed: u64,
    ops: &mut C,
) -> Result<RunResult> {
    let mut s = Swan::new(obj, *params, seed, ops)?;
    s.initialize();
    while s.eng.can_evaluate() && s.step_generation() {}
    Ok(s.finish())
}
