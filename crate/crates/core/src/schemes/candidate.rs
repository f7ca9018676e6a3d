use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::OfdmParams;

/// A point of the CS-PTS grid: one phase index and one shift index per
/// partition. Partition 0 is the reference (`phase 1`, shift `0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    phase_index: Vec<usize>,
    shift_index: Vec<usize>,
    u_phases: usize,
    d_shifts: usize,
    shift_step: usize,
    transform_len: usize,
}

impl Candidate {
    /// All phases 1, all shifts 0.
    pub fn identity(params: &OfdmParams) -> Self {
        let m = params.m_partitions;
        Self {
            phase_index: vec![0; m],
            shift_index: vec![0; m],
            u_phases: params.u_phases,
            d_shifts: params.d_shifts,
            shift_step: params.shift_step(),
            transform_len: params.oversampled_len(),
        }
    }

    /// Builds a candidate from the free indices of partitions `1..M`.
    pub fn from_indices(params: &OfdmParams, phase: &[usize], shift: &[usize]) -> Result<Self> {
        let free = params.m_partitions - 1;
        if phase.len() != free || shift.len() != free {
            return Err(Error::SizeMismatch {
                expected: free,
                actual: if phase.len() != free { phase.len() } else { shift.len() },
            });
        }
        if phase.iter().any(|&u| u >= params.u_phases) || shift.iter().any(|&d| d >= params.d_shifts) {
            return Err(Error::invalid("candidate index outside the grid"));
        }
        let mut c = Self::identity(params);
        c.phase_index[1..].copy_from_slice(phase);
        c.shift_index[1..].copy_from_slice(shift);
        Ok(c)
    }

    pub fn m_partitions(&self) -> usize {
        self.phase_index.len()
    }

    /// Phase indices `u_m`, with `u_0 = 0`.
    pub fn phase_index(&self) -> &[usize] {
        &self.phase_index
    }

    /// Shift indices `d_m`, with `d_0 = 0`.
    pub fn shift_index(&self) -> &[usize] {
        &self.shift_index
    }

    /// `gamma_m = exp(j 2 pi u_m / U)`.
    pub fn phases(&self) -> Vec<Complex64> {
        self.phase_index.iter().map(|&u| grid_phase(u, self.u_phases)).collect()
    }

    /// `delta_m = d_m * n_c / D` in samples, reduced modulo `n_c * l`.
    pub fn shifts(&self) -> Vec<usize> {
        self.shift_index
            .iter()
            .map(|&d| (d * self.shift_step) % self.transform_len)
            .collect()
    }
}

/// Unit-modulus grid phase `exp(j 2 pi u / U)`.
pub fn grid_phase(u: usize, u_phases: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * u as f64 / u_phases as f64)
}
