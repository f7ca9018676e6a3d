//! Adapters that expose a CS-PTS symbol as a continuous [`Objective`].
//!
//! Positions are continuous; each evaluation snaps them to the nearest
//! point of the phase and shift grids.

use std::f64::consts::TAU;

use rand::Rng;

use super::{Boundary, Objective};
use crate::error::{Error, Result};
use crate::opcount::{NoOps, OpSink};
use crate::params::OfdmParams;
use crate::rng::{rng_from_seed, SimRng};
use crate::schemes::{Candidate, CandidateEvaluator};

/// Wraps `value` into `[0, period)` and returns the nearest of `count`
/// evenly spaced grid points; an exact midpoint goes to the lower index.
fn snap(value: f64, period: f64, count: usize) -> usize {
    let w = value.rem_euclid(period);
    let t = w / (period / count as f64);
    let fl = t.floor();
    let idx = if t - fl > 0.5 { fl as usize + 1 } else { fl as usize };
    idx % count
}

/// Phase indices for the `M - 1` angle coordinates of `position`.
pub fn quantize_phases(angles: &[f64], params: &OfdmParams) -> Vec<usize> {
    angles.iter().map(|&a| snap(a, TAU, params.u_phases)).collect()
}

/// Snaps `M - 1` angles followed by `M - 1` shift coordinates (in samples,
/// modulo `n_c`) to a grid candidate.
pub fn quantize_candidate(position: &[f64], params: &OfdmParams) -> Result<Candidate> {
    let free = params.m_partitions - 1;
    if position.len() != 2 * free {
        return Err(Error::SizeMismatch {
            expected: 2 * free,
            actual: position.len(),
        });
    }
    let u = quantize_phases(&position[..free], params);
    let d: Vec<usize> = position[free..]
        .iter()
        .map(|&s| snap(s, params.n_c as f64, params.d_shifts))
        .collect();
    Candidate::from_indices(params, &u, &d)
}

fn phase_bounds(free: usize) -> Vec<(f64, f64)> {
    vec![(0.0, TAU); free]
}

/// Searches phases and shifts jointly: `2 (M - 1)` coordinates.
pub struct DirectObjective<'e, C: OpSink = NoOps> {
    ev: &'e CandidateEvaluator,
    ops: C,
    best: Option<(Candidate, f64)>,
}

impl<'e, C: OpSink> DirectObjective<'e, C> {
    pub fn new(ev: &'e CandidateEvaluator, ops: C) -> Self {
        Self { ev, ops, best: None }
    }

    /// Best grid candidate seen and its min-max PAPR.
    pub fn best(&self) -> Option<&(Candidate, f64)> {
        self.best.as_ref()
    }

    pub fn ops(&self) -> &C {
        &self.ops
    }

    pub fn into_ops(self) -> C {
        self.ops
    }
}

impl<C: OpSink> Objective for DirectObjective<'_, C> {
    fn dim(&self) -> usize {
        2 * (self.ev.params().m_partitions - 1)
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        let p = self.ev.params();
        let free = p.m_partitions - 1;
        let mut b = phase_bounds(free);
        b.extend(std::iter::repeat_n((0.0, p.n_c as f64), free));
        b
    }

    fn boundary(&self) -> Boundary {
        Boundary::Wrap
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        let cand = quantize_candidate(x, self.ev.params()).expect("position matches dim");
        let v = self.ev.evaluate_candidate(&cand, &mut self.ops);
        if self.best.as_ref().is_none_or(|b| v < b.1) {
            self.best = Some((cand, v));
        }
        v
    }
}

/// Searches phases only. Each evaluation is an intermediate node whose
/// phase products are computed once and shared by `rho2` children with
/// shifts drawn uniformly from the shift grid; the node's value is its best
/// child. One call costs `rho2` budget units.
pub struct TwoStageObjective<'e, C: OpSink = NoOps> {
    ev: &'e CandidateEvaluator,
    ops: C,
    rho2: usize,
    rng: SimRng,
    best: Option<(Candidate, f64)>,
    nodes: u64,
}

impl<'e, C: OpSink> TwoStageObjective<'e, C> {
    pub fn new(ev: &'e CandidateEvaluator, rho2: usize, seed: u64, ops: C) -> Result<Self> {
        if rho2 == 0 {
            return Err(Error::invalid("rho2 must be at least 1"));
        }
        Ok(Self {
            ev,
            ops,
            rho2,
            rng: rng_from_seed(seed),
            best: None,
            nodes: 0,
        })
    }

    pub fn best(&self) -> Option<&(Candidate, f64)> {
        self.best.as_ref()
    }

    pub fn ops(&self) -> &C {
        &self.ops
    }

    pub fn into_ops(self) -> C {
        self.ops
    }

    /// Intermediate nodes evaluated so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

impl<C: OpSink> Objective for TwoStageObjective<'_, C> {
    fn dim(&self) -> usize {
        self.ev.params().m_partitions - 1
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        phase_bounds(self.dim())
    }

    fn boundary(&self) -> Boundary {
        Boundary::Wrap
    }

    fn cost(&self) -> u64 {
        self.rho2 as u64
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        let params = *self.ev.params();
        let u = quantize_phases(x, &params);
        let prods = self.ev.phase_products(&u, &mut self.ops);
        self.nodes += 1;
        let mut node_best = f64::INFINITY;
        let mut node_d = vec![0; u.len()];
        let mut d = vec![0; u.len()];
        let mut shifts = vec![0; u.len()];
        for _ in 0..self.rho2 {
            for (k, dk) in d.iter_mut().enumerate() {
                *dk = self.rng.random_range(0..params.d_shifts);
                shifts[k] = *dk * params.shift_step();
            }
            let v = self.ev.evaluate(&prods, &shifts, node_best, &mut self.ops);
            if v < node_best {
                node_best = v;
                node_d.copy_from_slice(&d);
            }
        }
        if self.best.as_ref().is_none_or(|b| node_best < b.1) {
            let cand = Candidate::from_indices(&params, &u, &node_d).expect("indices on the grid");
            self.best = Some((cand, node_best));
        }
        node_best
    }
}

/// Expands phase-only nodes into `rho2` children each, with shifts drawn
/// uniformly from the grid, and evaluates every child exactly. Phase
/// products are computed once per node.
pub fn two_stage_expand<R: Rng, C: OpSink>(
    ev: &CandidateEvaluator,
    nodes: &[Vec<usize>],
    rho2: usize,
    rng: &mut R,
    ops: &mut C,
) -> Result<Vec<(Candidate, f64)>> {
    if rho2 == 0 {
        return Err(Error::invalid("rho2 must be at least 1"));
    }
    let params = *ev.params();
    let free = params.m_partitions - 1;
    let mut out = Vec::with_capacity(nodes.len() * rho2);
    for u in nodes {
        if u.len() != free || u.iter().any(|&x| x >= params.u_phases) {
            return Err(Error::invalid("node phase indices do not match the grid"));
        }
        let prods = ev.phase_products(u, ops);
        for _ in 0..rho2 {
            let d: Vec<usize> = (0..free).map(|_| rng.random_range(0..params.d_shifts)).collect();
            let shifts: Vec<usize> = d.iter().map(|&x| x * params.shift_step()).collect();
            let v = ev.evaluate(&prods, &shifts, f64::INFINITY, ops);
            out.push((Candidate::from_indices(&params, u, &d)?, v));
        }
    }
    Ok(out)
}
