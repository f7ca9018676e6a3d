//! Fast min-max PAPR evaluation over the CS-PTS grid.
//!
//! Each rotated partial sequence is stored twice back to back, so a cyclic
//! shift is a plain slice offset. The average power of a combined signal
//! does not depend on the candidate (the partitions are disjoint in
//! frequency and every rotation is unit-modulus), so it is computed once
//! per antenna from the partial sequences.
//!
//! With a counting sink the phase products are recomputed on every call and
//! charged to [`Process::PhasePatterns`]; with [`NoOps`](crate::NoOps) they
//! come from a precomputed table. Both give bit-identical values.

use std::borrow::Cow;

use num_complex::Complex64;

use super::candidate::grid_phase;
use super::partition::PartitionedSymbol;
use super::Candidate;
use crate::error::{Error, Result};
use crate::opcount::{OpSink, Process};
use crate::params::OfdmParams;

const CHUNK: usize = 64;

/// Precomputed state for repeated candidate evaluations on one symbol.
#[derive(Debug, Clone)]
pub struct CandidateEvaluator {
    params: OfdmParams,
    n_tx: usize,
    n: usize,
    base: Vec<Vec<Complex64>>,
    partials: Vec<Vec<Vec<Complex64>>>,
    table: Vec<Vec<Complex64>>,
    gammas: Vec<Complex64>,
    mean: Vec<f64>,
}

/// Rotated, doubled partial sequences of partitions `1..M` for one choice
/// of phase indices, indexed `antenna * (M - 1) + (m - 1)`.
#[derive(Debug, Clone)]
pub struct PhaseProducts<'a> {
    seqs: Vec<Cow<'a, [Complex64]>>,
}

fn doubled(x: &[Complex64], gamma: Complex64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = x.iter().map(|&v| gamma * v).collect();
    out.extend_from_within(..);
    out
}

impl CandidateEvaluator {
    pub fn new(parts: &PartitionedSymbol) -> Result<Self> {
        let params = *parts.params();
        let n_tx = parts.n_tx();
        let m = params.m_partitions;
        let u = params.u_phases;
        let gammas: Vec<Complex64> = (0..u).map(|k| grid_phase(k, u)).collect();
        let mut base = Vec::with_capacity(n_tx);
        let mut partials = Vec::with_capacity(n_tx);
        let mut table = Vec::with_capacity(n_tx * (m - 1) * u);
        let mut mean = Vec::with_capacity(n_tx);
        for i in 0..n_tx {
            base.push(parts.part(i, 0).to_vec());
            let ps: Vec<Vec<Complex64>> = (0..m).map(|mm| parts.part(i, mm).to_vec()).collect();
            let power: f64 = ps.iter().map(|p| crate::signal::mean_power(p)).sum();
            if !(power > 0.0) {
                return Err(Error::ZeroSignal);
            }
            mean.push(power);
            for p in &ps[1..] {
                for &g in &gammas {
                    table.push(doubled(p, g));
                }
            }
            partials.push(ps);
        }
        Ok(Self {
            params,
            n_tx,
            n: params.oversampled_len(),
            base,
            partials,
            table,
            gammas,
            mean,
        })
    }

    pub fn params(&self) -> &OfdmParams {
        &self.params
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    /// Average power of antenna `i` for every candidate.
    pub fn mean_power(&self, antenna: usize) -> f64 {
        self.mean[antenna]
    }

    /// Rotates partitions `1..M` by the grid phases `u` (length `M - 1`).
    /// Counted: `(M - 1) n_c l` complex multiplications per antenna.
    pub fn phase_products<C: OpSink>(&self, u: &[usize], ops: &mut C) -> PhaseProducts<'_> {
        let free = self.params.m_partitions - 1;
        assert_eq!(u.len(), free, "phase index length");
        let n_u = self.params.u_phases;
        let mut seqs = Vec::with_capacity(self.n_tx * free);
        for i in 0..self.n_tx {
            for (k, &ui) in u.iter().enumerate() {
                if C::ENABLED {
                    seqs.push(Cow::Owned(doubled(&self.partials[i][k + 1], self.gammas[ui])));
                } else {
                    seqs.push(Cow::Borrowed(&self.table[(i * free + k) * n_u + ui][..]));
                }
            }
        }
        ops.complex_mul(Process::PhasePatterns, (self.n_tx * free * self.n) as u64);
        PhaseProducts { seqs }
    }

    /// Min-max PAPR (linear) of the candidate with phase products `prods` and
    /// sample shifts `shifts` (length `M - 1`, each `< n_c l`).
    ///
    /// When `C` does not count, evaluation stops as soon as the result is
    /// known to be `>= bound`, and some value `>= bound` is returned. Pass
    /// `f64::INFINITY` for an exact result. Counted per antenna:
    /// `(M - 1) n_c l` complex additions and `2 n_c l` real multiplications
    /// with `n_c l` real additions for the peak search.
    pub fn evaluate<C: OpSink>(&self, prods: &PhaseProducts<'_>, shifts: &[usize], bound: f64, ops: &mut C) -> f64 {
        let free = self.params.m_partitions - 1;
        debug_assert_eq!(shifts.len(), free);
        let n = self.n;
        let mut worst = 0.0f64;
        let mut acc = [Complex64::new(0.0, 0.0); CHUNK];
        for i in 0..self.n_tx {
            let srcs: Vec<&[Complex64]> = (0..free)
                .map(|k| &prods.seqs[i * free + k][shifts[k]..shifts[k] + n])
                .collect();
            let base = &self.base[i];
            let mean = self.mean[i];
            let thr = bound * mean;
            let mut peak = 0.0f64;
            let mut start = 0;
            while start < n {
                let len = CHUNK.min(n - start);
                let acc = &mut acc[..len];
                acc.copy_from_slice(&base[start..start + len]);
                for s in &srcs {
                    for (a, &v) in acc.iter_mut().zip(&s[start..start + len]) {
                        *a += v;
                    }
                }
                let mut cpeak = 0.0f64;
                for a in acc.iter() {
                    cpeak = cpeak.max(a.re * a.re + a.im * a.im);
                }
                peak = peak.max(cpeak);
                if !C::ENABLED && peak >= thr && peak / mean >= bound {
                    return f64::INFINITY;
                }
                start += len;
            }
            worst = worst.max(peak / mean);
        }
        ops.complex_add(Process::PhasePatterns, (self.n_tx * free * n) as u64);
        ops.real_mul(Process::Papr, (self.n_tx * 2 * n) as u64);
        ops.real_add(Process::Papr, (self.n_tx * n) as u64);
        worst
    }

    /// Exact min-max PAPR of a grid candidate.
    pub fn evaluate_candidate<C: OpSink>(&self, cand: &Candidate, ops: &mut C) -> f64 {
        let prods = self.phase_products(&cand.phase_index()[1..], ops);
        let shifts = cand.shifts();
        self.evaluate(&prods, &shifts[1..], f64::INFINITY, ops)
    }
}
