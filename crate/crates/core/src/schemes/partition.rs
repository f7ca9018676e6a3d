use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::zero_padded_ifft;
use crate::opcount::OpSink;
use crate::params::OfdmParams;

/// How subcarriers are assigned to partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartitionLayout {
    /// Partition `m` holds bins `[m n_c/M, (m+1) n_c/M)`.
    #[default]
    Adjacent,
    /// Partition `m` holds bins `m, m + M, m + 2M, ...`.
    Interleaved,
}

/// Oversampled time-domain partial sequences, `parts[antenna][m]`, each of
/// length `n_c * l`.
#[derive(Debug, Clone)]
pub struct PartitionedSymbol {
    params: OfdmParams,
    layout: PartitionLayout,
    parts: Vec<Vec<Vec<Complex64>>>,
}

impl PartitionedSymbol {
    pub fn params(&self) -> &OfdmParams {
        &self.params
    }

    pub fn layout(&self) -> PartitionLayout {
        self.layout
    }

    pub fn n_tx(&self) -> usize {
        self.parts.len()
    }

    pub fn m_partitions(&self) -> usize {
        self.params.m_partitions
    }

    /// Samples per partial sequence.
    pub fn len(&self) -> usize {
        self.params.oversampled_len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, antenna: usize, m: usize) -> &[Complex64] {
        &self.parts[antenna][m]
    }

    /// Sum of all partial sequences of one antenna: the unmodified signal.
    pub fn original(&self, antenna: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        for p in &self.parts[antenna] {
            for (o, &v) in out.iter_mut().zip(p) {
                *o += v;
            }
        }
        out
    }
}

/// Splits each antenna's `n_c`-bin spectrum into `M` disjoint partitions and
/// transforms each with oversampling `l`. IFFT work is charged to `ops`.
pub fn partition<S: AsRef<[Complex64]>, C: OpSink>(
    spectra: &[S],
    params: &OfdmParams,
    layout: PartitionLayout,
    ops: &mut C,
) -> Result<PartitionedSymbol> {
    params.validate()?;
    if spectra.is_empty() {
        return Err(Error::invalid("no antennas"));
    }
    let n_c = params.n_c;
    let n = params.oversampled_len();
    let m_count = params.m_partitions;
    let block = params.block_len();
    let mut parts = Vec::with_capacity(spectra.len());
    for s in spectra {
        let s = s.as_ref();
        if s.len() != n_c {
            return Err(Error::SizeMismatch {
                expected: n_c,
                actual: s.len(),
            });
        }
        let mut per_antenna = Vec::with_capacity(m_count);
        for m in 0..m_count {
            let seq = match layout {
                PartitionLayout::Adjacent => {
                    zero_padded_ifft(&s[m * block..(m + 1) * block], m * block, 1, n, ops)?
                }
                PartitionLayout::Interleaved => {
                    let bins: Vec<Complex64> = s.iter().skip(m).step_by(m_count).copied().collect();
                    zero_padded_ifft(&bins, m, m_count, n, ops)?
                }
            };
            per_antenna.push(seq);
        }
        parts.push(per_antenna);
    }
    Ok(PartitionedSymbol {
        params: *params,
        layout,
        parts,
    })
}

/// Reference combination `x_i[t] = sum_m gamma_m x_m[(t + delta_m) mod n]`
/// for every antenna.
pub fn combine(parts: &PartitionedSymbol, cand: &super::Candidate) -> Result<Vec<Vec<Complex64>>> {
    if cand.m_partitions() != parts.m_partitions() {
        return Err(Error::SizeMismatch {
            expected: parts.m_partitions(),
            actual: cand.m_partitions(),
        });
    }
    let n = parts.len();
    let phases = cand.phases();
    let shifts = cand.shifts();
    Ok((0..parts.n_tx())
        .map(|i| {
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for m in 0..parts.m_partitions() {
                let p = parts.part(i, m);
                for (t, o) in out.iter_mut().enumerate() {
                    *o += phases[m] * p[(t + shifts[m]) % n];
                }
            }
            out
        })
        .collect())
}

/// Largest per-antenna PAPR of the combined signals.
pub fn minmax_papr(parts: &PartitionedSymbol, cand: &super::Candidate) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in combine(parts, cand)? {
        worst = worst.max(crate::signal::papr_linear(&x)?);
    }
    Ok(worst)
}
