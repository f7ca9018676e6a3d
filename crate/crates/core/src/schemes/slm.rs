use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fft::zero_padded_ifft;
use crate::opcount::{OpSink, Process};
use crate::rng::rng_from_seed;

/// `V` phase vectors over `n_c` subcarriers with entries `+1` or `-1`.
/// Codeword 0 is all ones, so selection never does worse than no SLM.
#[derive(Debug, Clone, PartialEq)]
pub struct SlmCodebook {
    n_c: usize,
    words: Vec<Vec<f64>>,
}

impl SlmCodebook {
    pub fn random(v: usize, n_c: usize, seed: u64) -> Result<Self> {
        if v == 0 || n_c == 0 {
            return Err(Error::invalid("codebook needs V >= 1 and n_c >= 1"));
        }
        let mut rng = rng_from_seed(seed);
        let mut words = vec![vec![1.0; n_c]];
        for _ in 1..v {
            words.push((0..n_c).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect());
        }
        Ok(Self { n_c, words })
    }

    pub fn from_words(words: Vec<Vec<f64>>) -> Result<Self> {
        let n_c = words.first().map(Vec::len).ok_or_else(|| Error::invalid("empty codebook"))?;
        if words.iter().any(|w| w.len() != n_c || w.iter().any(|&x| x != 1.0 && x != -1.0)) {
            return Err(Error::invalid("codewords must have equal length and entries of +-1"));
        }
        Ok(Self { n_c, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn word(&self, v: usize) -> &[f64] {
        &self.words[v]
    }
}

/// Selected codeword and the resulting signals.
#[derive(Debug, Clone)]
pub struct SlmResult {
    pub index: usize,
    /// Min-max PAPR, linear.
    pub papr: f64,
    pub signals: Vec<Vec<Complex64>>,
}

/// Tries every codeword on all antennas at once and keeps the one with the
/// smallest largest-antenna PAPR (earliest codeword on ties).
///
/// Per codeword and antenna the zero-padded `n_c l` spectrum is multiplied
/// by the codeword (padded with ones), then transformed.
pub fn slm_transform<S: AsRef<[Complex64]>, C: OpSink>(
    spectra: &[S],
    codebook: &SlmCodebook,
    l: usize,
    ops: &mut C,
) -> Result<SlmResult> {
    if codebook.is_empty() {
        return Err(Error::invalid("empty codebook"));
    }
    if spectra.is_empty() {
        return Err(Error::invalid("no antennas"));
    }
    let n_c = codebook.n_c();
    let n = n_c * l;
    let mut best: Option<SlmResult> = None;
    for v in 0..codebook.len() {
        let w = codebook.word(v);
        let mut signals = Vec::with_capacity(spectra.len());
        let mut worst = 0.0f64;
        for s in spectra {
            let s = s.as_ref();
            if s.len() != n_c {
                return Err(Error::SizeMismatch {
                    expected: n_c,
                    actual: s.len(),
                });
            }
            let mut padded = vec![Complex64::new(0.0, 0.0); n];
            padded[..n_c].copy_from_slice(s);
            for (k, z) in padded.iter_mut().enumerate() {
                *z *= if k < n_c { w[k] } else { 1.0 };
            }
            ops.complex_mul(Process::PhasePatterns, n as u64);
            let x = zero_padded_ifft(&padded[..n_c], 0, 1, n, ops)?;
            let mean = crate::signal::mean_power(&x);
            if !(mean > 0.0) {
                return Err(Error::ZeroSignal);
            }
            let peak = x.iter().fold(0.0f64, |p, z| p.max(z.re * z.re + z.im * z.im));
            ops.real_mul(Process::Papr, 2 * n as u64);
            ops.real_add(Process::Papr, n as u64);
            worst = worst.max(peak / mean);
            signals.push(x);
        }
        if best.as_ref().is_none_or(|b| worst < b.papr) {
            best = Some(SlmResult {
                index: v,
                papr: worst,
                signals,
            });
        }
    }
    Ok(best.expect("codebook is nonempty"))
}
