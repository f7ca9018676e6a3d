//! CS-PTS candidate evaluation, the exhaustive-search reference, and the
//! PTS and SLM baselines for SVD-precoded MIMO.
//!
//! All antennas share the same candidate so precoding orthogonality is
//! kept; the objective is the largest per-antenna PAPR.

mod candidate;
mod evaluator;
mod exhaustive;
mod partition;
mod slm;

pub use candidate::{grid_phase, Candidate};
pub use evaluator::{CandidateEvaluator, PhaseProducts};
pub use exhaustive::{exhaustive_search, grid_size, pts_params, pts_transform, SearchResult, DEFAULT_EVALUATION_CAP};
pub use partition::{combine, minmax_papr, partition, PartitionLayout, PartitionedSymbol};
pub use slm::{slm_transform, SlmCodebook, SlmResult};

use crate::error::{Error, Result};

/// Transmit-side scheme, for side-information accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Slm { v: usize },
    Pts { m: usize, u: usize },
    CsPts { m: usize, u: usize, d: usize },
}

fn ceil_log2(x: usize) -> u32 {
    usize::BITS - (x.max(1) - 1).leading_zeros()
}

/// Bits needed to tell the receiver which pattern was used.
pub fn side_info_bits(kind: SchemeKind) -> Result<u32> {
    match kind {
        SchemeKind::Slm { v } if v >= 1 => Ok(ceil_log2(v)),
        SchemeKind::Pts { m, u } if m >= 1 && u.is_power_of_two() => Ok((m as u32 - 1) * ceil_log2(u)),
        SchemeKind::CsPts { m, u, d } if m >= 1 && u.is_power_of_two() && d.is_power_of_two() => {
            Ok((m as u32 - 1) * (ceil_log2(u) + ceil_log2(d)))
        }
        other => Err(Error::invalid(format!("invalid scheme parameters {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn side_info_examples() {
        assert_eq!(side_info_bits(SchemeKind::Slm { v: 4096 }).unwrap(), 12);
        assert_eq!(side_info_bits(SchemeKind::Slm { v: 5 }).unwrap(), 3);
        assert_eq!(side_info_bits(SchemeKind::Slm { v: 1 }).unwrap(), 0);
        assert_eq!(side_info_bits(SchemeKind::Pts { m: 4, u: 4 }).unwrap(), 6);
        assert_eq!(side_info_bits(SchemeKind::CsPts { m: 4, u: 4, d: 8 }).unwrap(), 15);
        assert!(side_info_bits(SchemeKind::Pts { m: 4, u: 3 }).is_err());
        assert!(side_info_bits(SchemeKind::Slm { v: 0 }).is_err());
    }
}
