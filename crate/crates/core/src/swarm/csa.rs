//! Cuckoo search: Levy phase, discovery and elitism, `2N` evaluations per
//! generation. Shares its operators with SWAN, except that the best nest
//! takes a zero step in the Levy phase.

use super::engine::Engine;
use super::levy::LevySampler;
use super::swan::{discovery, levy_phase};
use super::{Objective, RunResult};
use crate::error::{Error, Result};
use crate::opcount::OpSink;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsaParams {
    pub n_nests: usize,
    pub p_a: f64,
    pub alpha: f64,
    pub beta: f64,
    pub budget: u64,
}

impl Default for CsaParams {
    fn default() -> Self {
        Self {
            n_nests: 11,
            p_a: 0.25,
            alpha: 0.01,
            beta: 1.5,
            budget: 270,
        }
    }
}

impl CsaParams {
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
        LevySampler::new(self.beta)?;
        Ok(())
    }
}

pub fn csa_run<O: Objective + ?Sized, C: OpSink>(
    obj: &mut O,
    params: &CsaParams,
    seed: u64,
    ops: &mut C,
) -> Result<RunResult> {
    params.validate()?;
    let levy = LevySampler::new(params.beta)?;
    let mut eng = Engine::new(obj, ops, params.budget, params.n_nests)?;
    let mut rng = rng_from_seed(seed);
    let mut pop = eng
        .init_population(params.n_nests, &mut rng)
        .expect("budget validated against the initial population");
    eng.record(0);
    let n_a = ((params.p_a * params.n_nests as f64).round() as usize).clamp(1, params.n_nests);
    let mut generation = 0;
    while eng.can_evaluate() {
        let ok = levy_phase(&mut eng, &mut pop, &mut rng, &levy, params.alpha, false).is_ok()
            && discovery(&mut eng, &mut pop, &mut rng, &levy, params.alpha, n_a).is_ok();
        if ok {
            generation += 1;
        }
        eng.record(generation);
        if !ok {
            break;
        }
    }
    Ok(eng.finish(generation, Vec::new()))
}
