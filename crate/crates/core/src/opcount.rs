//! Arithmetic-operation counters.
//!
//! Kernels that take part in the complexity accounting are generic over
//! [`OpSink`]. Passing [`NoOps`] compiles the counting away; passing an
//! [`OpCounter`] records every complex and real multiplication and addition,
//! tagged by the processing stage that performed it.

use std::fmt;
use std::ops::{Add, AddAssign, Sub};

/// Processing stage an operation is charged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    /// Zero-padded IFFTs of the partitions (or of the full spectrum for SLM).
    Ifft,
    /// Applying phase rotations and summing the rotated/shifted sequences.
    PhasePatterns,
    /// Peak-power search over the combined time-domain signal.
    Papr,
    /// Arithmetic spent by an optimizer to produce new positions.
    SolutionGen,
}

impl Process {
    pub const ALL: [Process; 4] = [
        Process::Ifft,
        Process::PhasePatterns,
        Process::Papr,
        Process::SolutionGen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Process::Ifft => "ifft",
            Process::PhasePatterns => "phase_patterns",
            Process::Papr => "papr",
            Process::SolutionGen => "solution_gen",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Operation totals for one process.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounts {
    pub complex_mults: u64,
    pub complex_adds: u64,
    pub real_mults: u64,
    pub real_adds: u64,
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            complex_mults: self.complex_mults + rhs.complex_mults,
            complex_adds: self.complex_adds + rhs.complex_adds,
            real_mults: self.real_mults + rhs.real_mults,
            real_adds: self.real_adds + rhs.real_adds,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        *self = *self + rhs;
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;

    /// Panics if `rhs` is not an earlier snapshot of `self`.
    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            complex_mults: self.complex_mults - rhs.complex_mults,
            complex_adds: self.complex_adds - rhs.complex_adds,
            real_mults: self.real_mults - rhs.real_mults,
            real_adds: self.real_adds - rhs.real_adds,
        }
    }
}

/// Receiver of operation counts.
pub trait OpSink {
    /// `false` for sinks that discard everything; kernels may then take
    /// shortcuts (early termination) that would change the counts.
    const ENABLED: bool;

    fn complex_mul(&mut self, process: Process, n: u64);
    fn complex_add(&mut self, process: Process, n: u64);
    fn real_mul(&mut self, process: Process, n: u64);
    fn real_add(&mut self, process: Process, n: u64);
}

/// Sink that drops all counts.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoOps;

impl OpSink for NoOps {
    const ENABLED: bool = false;

    #[inline(always)]
    fn complex_mul(&mut self, _: Process, _: u64) {}
    #[inline(always)]
    fn complex_add(&mut self, _: Process, _: u64) {}
    #[inline(always)]
    fn real_mul(&mut self, _: Process, _: u64) {}
    #[inline(always)]
    fn real_add(&mut self, _: Process, _: u64) {}
}

/// Monotone per-process operation counters.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct OpCounter {
    counts: [OpCounts; 4],
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, process: Process) -> OpCounts {
        self.counts[process.slot()]
    }

    pub fn snapshot(&self) -> OpCounter {
        self.clone()
    }

    /// Operations recorded since `earlier`, which must be a snapshot of `self`.
    pub fn since(&self, earlier: &OpCounter) -> OpCounter {
        let mut out = OpCounter::new();
        for p in Process::ALL {
            out.counts[p.slot()] = self.get(p) - earlier.get(p);
        }
        out
    }

    pub fn merge(&mut self, other: &OpCounter) {
        for p in Process::ALL {
            self.counts[p.slot()] += other.get(p);
        }
    }

    pub fn total(&self) -> OpCounts {
        self.counts.iter().fold(OpCounts::default(), |acc, c| acc + *c)
    }
}

impl OpSink for OpCounter {
    const ENABLED: bool = true;

    #[inline]
    fn complex_mul(&mut self, process: Process, n: u64) {
        self.counts[process.slot()].complex_mults += n;
    }
    #[inline]
    fn complex_add(&mut self, process: Process, n: u64) {
        self.counts[process.slot()].complex_adds += n;
    }
    #[inline]
    fn real_mul(&mut self, process: Process, n: u64) {
        self.counts[process.slot()].real_mults += n;
    }
    #[inline]
    fn real_add(&mut self, process: Process, n: u64) {
        self.counts[process.slot()].real_adds += n;
    }
}

impl<T: OpSink + ?Sized> OpSink for &mut T {
    const ENABLED: bool = T::ENABLED;

    #[inline(always)]
    fn complex_mul(&mut self, process: Process, n: u64) {
        (**self).complex_mul(process, n)
    }
    #[inline(always)]
    fn complex_add(&mut self, process: Process, n: u64) {
        (**self).complex_add(process, n)
    }
    #[inline(always)]
    fn real_mul(&mut self, process: Process, n: u64) {
        (**self).real_mul(process, n)
    }
    #[inline(always)]
    fn real_add(&mut self, process: Process, n: u64) {
        (**self).real_add(process, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_diff() {
        let mut c = OpCounter::new();
        c.complex_mul(Process::Ifft, 10);
        let snap = c.snapshot();
        c.complex_mul(Process::Ifft, 5);
        c.real_add(Process::Papr, 7);
        let d = c.since(&snap);
        assert_eq!(d.get(Process::Ifft).complex_mults, 5);
        assert_eq!(d.get(Process::Papr).real_adds, 7);
        assert_eq!(c.total().complex_mults, 15);
    }
}
