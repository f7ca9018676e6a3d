use super::evaluator::CandidateEvaluator;
use super::Candidate;
use crate::error::{Error, Result};
use crate::opcount::OpSink;
use crate::params::OfdmParams;

/// Default ceiling on grid evaluations for a single exhaustive search.
pub const DEFAULT_EVALUATION_CAP: u64 = 1 << 24;

/// Outcome of a grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub candidate: Candidate,
    /// Min-max PAPR, linear.
    pub papr: f64,
    /// Grid candidates visited.
    pub evaluations: u64,
}

/// `(U D)^(M - 1)`, saturating.
pub fn grid_size(params: &OfdmParams) -> u128 {
    let per = (params.u_phases as u128) * (params.d_shifts as u128);
    let exp = params.m_partitions as u32 - 1;
    per.checked_pow(exp).unwrap_or(u128::MAX)
}

/// Advances a little-endian-last odometer; returns false after the last tuple.
fn next_tuple(idx: &mut [usize], radix: usize) -> bool {
    for v in idx.iter_mut().rev() {
        *v += 1;
        if *v < radix {
            return true;
        }
        *v = 0;
    }
    false
}

/// Visits every grid candidate and returns the one with the smallest
/// min-max PAPR. Phase tuples form the outer loop and shift tuples the
/// inner one, both in lexicographic order with partition 1 most
/// significant; ties keep the earliest candidate.
pub fn exhaustive_search<C: OpSink>(ev: &CandidateEvaluator, cap: u64, ops: &mut C) -> Result<SearchResult> {
    let params = *ev.params();
    let required = grid_size(&params);
    if required > cap as u128 {
        return Err(Error::EvaluationCap { required, cap });
    }
    let free = params.m_partitions - 1;
    let step = params.shift_step();
    let mut u = vec![0usize; free];
    let mut best_u = u.clone();
    let mut best_d = vec![0usize; free];
    let mut best = f64::INFINITY;
    let mut evaluations = 0u64;
    loop {
        let prods = ev.phase_products(&u, ops);
        let mut d = vec![0usize; free];
        loop {
            let shifts: Vec<usize> = d.iter().map(|&x| x * step).collect();
            let v = ev.evaluate(&prods, &shifts, best, ops);
            evaluations += 1;
            if v < best {
                best = v;
                best_u.copy_from_slice(&u);
                best_d.copy_from_slice(&d);
            }
            if !next_tuple(&mut d, params.d_shifts) {
                break;
            }
        }
        if !next_tuple(&mut u, params.u_phases) {
            break;
        }
    }
    Ok(SearchResult {
        candidate: Candidate::from_indices(&params, &best_u, &best_d)?,
        papr: best,
        evaluations,
    })
}

/// Phase-only search (all shifts zero) over `U^(M - 1)` candidates.
///
/// `ev` must have been built with `d_shifts == 1`; see [`pts_params`].
pub fn pts_transform<C: OpSink>(ev: &CandidateEvaluator, cap: u64, ops: &mut C) -> Result<SearchResult> {
    if ev.params().d_shifts != 1 {
        return Err(Error::invalid("PTS search needs d_shifts = 1"));
    }
    exhaustive_search(ev, cap, ops)
}

/// The same grid with the shift dimension removed.
pub fn pts_params(params: &OfdmParams) -> OfdmParams {
    OfdmParams {
        d_shifts: 1,
        ..*params
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_order() {
        let mut t = vec![0, 0];
        let mut seen = vec![t.clone()];
        while next_tuple(&mut t, 3) {
            seen.push(t.clone());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[3], vec![1, 0]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_tuple(&mut empty, 2));
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(grid_size(&OfdmParams::new(256, 4, 4, 4, 8).unwrap()), 32768);
        assert_eq!(grid_size(&OfdmParams::new(32, 4, 1, 4, 8).unwrap()), 1);
        assert_eq!(grid_size(&OfdmParams::new(256, 4, 256, 64, 256).unwrap()), u128::MAX);
    }
}
