//! Global-best particle swarm with constriction coefficients.

use rand::Rng;

use super::engine::{Engine, SolutionGenCost};
use super::{Nest, Objective, RunResult};
use crate::error::{Error, Result};
use crate::opcount::OpSink;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub n_particles: usize,
    pub inertia: f64,
    pub c1: f64,
    pub c2: f64,
    /// Velocity limit as a fraction of the box range.
    pub v_max: f64,
    pub budget: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            n_particles: 11,
            inertia: 0.7298,
            c1: 1.49618,
            c2: 1.49618,
            v_max: 0.5,
            budget: 270,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 {
            return Err(Error::invalid("n_particles must be positive"));
        }
        let finite = [self.inertia, self.c1, self.c2, self.v_max];
        if finite.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || self.v_max == 0.0 {
            return Err(Error::invalid("PSO coefficients must be finite, v_max positive"));
        }
        Ok(())
    }
}

pub fn pso_run<O: Objective + ?Sized, C: OpSink>(
    obj: &mut O,
    params: &PsoParams,
    seed: u64,
    ops: &mut C,
) -> Result<RunResult> {
    params.validate()?;
    let mut eng = Engine::new(obj, ops, params.budget, params.n_particles)?;
    let mut rng = rng_from_seed(seed);
    let n = eng.dim();
    let vmax: Vec<f64> = eng.range.iter().map(|r| r * params.v_max).collect();
    let mut x = eng
        .init_population(params.n_particles, &mut rng)
        .expect("budget validated against the initial population");
    let mut v: Vec<Vec<f64>> = (0..params.n_particles)
        .map(|_| {
            let u = eng.uniform_position(&mut rng);
            (0..n).map(|d| (u[d] - eng.lo[d]) / eng.range[d] * 2.0 * vmax[d] - vmax[d]).collect()
        })
        .collect();
    let mut pbest: Vec<Nest> = x.clone();
    let mut g = pbest
        .iter()
        .enumerate()
        .fold(0, |b, (i, p)| if p.f < pbest[b].f { i } else { b });
    let mut gbest = pbest[g].position.clone();
    eng.record(0);
    let mut generation = 0;
    'outer: while eng.can_evaluate() {
        for i in 0..params.n_particles {
            let mut pos = x[i].position.clone();
            for d in 0..n {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let vel = params.inertia * v[i][d]
                    + params.c1 * r1 * (pbest[i].position[d] - pos[d])
                    + params.c2 * r2 * (gbest[d] - pos[d]);
                v[i][d] = vel.clamp(-vmax[d], vmax[d]);
                pos[d] += v[i][d];
            }
            eng.charge_op(|t| &mut t.pso_update, SolutionGenCost::pso_update);
            let Ok(nest) = eng.eval(pos) else {
                eng.record(generation);
                break 'outer;
            };
            if nest.f < pbest[i].f {
                pbest[i] = nest.clone();
                if nest.f < pbest[g].f {
                    g = i;
                    gbest = nest.position.clone();
                }
            }
            x[i] = nest;
        }
        generation += 1;
        eng.record(generation);
    }
    Ok(eng.finish(generation, Vec::new()))
}
