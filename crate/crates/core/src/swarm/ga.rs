//! Generational genetic algorithm: binary tournaments, uniform crossover,
//! per-gene reset mutation, single-elite replacement of the worst child.

use rand::Rng;

use super::engine::{ranked, Engine};
use super::{Nest, Objective, RunResult};
use crate::error::{Error, Result};
use crate::opcount::OpSink;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    pub crossover_p: f64,
    /// Per-gene mutation probability; `None` means `1 / dim`.
    pub mutation_rate: Option<f64>,
    pub budget: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population: 11,
            crossover_p: 0.5,
            mutation_rate: None,
            budget: 270,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population == 0 {
            return Err(Error::invalid("population must be positive"));
        }
        let probs = [Some(self.crossover_p), self.mutation_rate];
        if probs.iter().flatten().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::invalid("probabilities must lie in [0, 1]"));
        }
        Ok(())
    }
}

fn tournament<R: Rng>(pop: &[Nest], rng: &mut R) -> usize {
    let a = rng.random_range(0..pop.len());
    let b = rng.random_range(0..pop.len());
    if pop[b].beats(&pop[a]) || (pop[b].cmp_fitness(&pop[a]).is_eq() && b < a) {
        b
    } else {
        a
    }
}

pub fn ga_run<O: Objective + ?Sized, C: OpSink>(
    obj: &mut O,
    params: &GaParams,
    seed: u64,
    ops: &mut C,
) -> Result<RunResult> {
    params.validate()?;
    let mut eng = Engine::new(obj, ops, params.budget, params.population)?;
    let mut rng = rng_from_seed(seed);
    let pop = eng
        .init_population(params.population, &mut rng)
        .expect("budget validated against the initial population");
    Ok(evolve(eng, pop, params, &mut rng))
}

/// Runs generations from a given population until the budget is spent.
fn evolve<O: Objective + ?Sized, C: OpSink, R: Rng>(
    mut eng: Engine<'_, O, C>,
    mut pop: Vec<Nest>,
    params: &GaParams,
    rng: &mut R,
) -> RunResult {
    let n = eng.dim();
    let rate = params.mutation_rate.unwrap_or(1.0 / n as f64);
    eng.record(0);
    let mut generation = 0;
    while eng.can_evaluate() {
        let elite = pop[ranked(&pop)[0]].clone();
        let mut children: Vec<Nest> = Vec::with_capacity(pop.len());
        let mut complete = true;
        for _ in 0..pop.len() {
            let p1 = tournament(&pop, rng);
            let p2 = tournament(&pop, rng);
            let mut genes = 0;
            let child: Vec<f64> = (0..n)
                .map(|d| {
                    let from_second = rng.random::<f64>() < params.crossover_p;
                    let mut g = if from_second { pop[p2].position[d] } else { pop[p1].position[d] };
                    if rng.random::<f64>() < rate {
                        g = eng.lo[d] + rng.random::<f64>() * eng.range[d];
                        genes += 1;
                    }
                    g
                })
                .collect();
            eng.charge_ga_genes(genes);
            match eng.eval(child) {
                Ok(c) => children.push(c),
                Err(_) => {
                    complete = false;
                    break;
                }
            }
        }
        if !complete {
            // Fill the generation with the fittest parents so the
            // population keeps its size.
            let order = ranked(&pop);
            let missing = pop.len() - children.len();
            children.extend(order[..missing].iter().map(|&i| pop[i].clone()));
        }
        let worst = *ranked(&children).last().expect("nonempty");
        if elite.beats(&children[worst]) {
            children[worst] = elite;
        }
        pop = children;
        if complete {
            generation += 1;
        }
        eng.record(generation);
        if !complete {
            break;
        }
    }
    eng.finish(generation, Vec::new())
}
