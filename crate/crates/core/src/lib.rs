//! PAPR reduction for SVD-precoded MIMO-OFDM.
//!
//! The crate is organised bottom-up:
//!
//! * [`signal`], [`fft`], [`qam`]: complex-baseband primitives (symbol mapping,
//!   zero-padded IFFT, cyclic shifts, PAPR measurement).
//! * [`mimo`]: Rayleigh multipath channels, per-subcarrier SVD and precoding.
//! * [`schemes`]: CS-PTS candidate evaluation, the exhaustive-search oracle, and
//!   the PTS / SLM baselines.
//! * [`swarm`]: the SWAN optimizer, the CSA / PSO / GA baselines, the CS-PTS
//!   search adapters and a benchmark-function corpus.
//! * [`opcount`]: arithmetic-operation counters threaded through the kernels.

pub mod error;
pub mod fft;
pub mod mimo;
pub mod opcount;
pub mod params;
pub mod qam;
pub mod rng;
pub mod schemes;
pub mod signal;
pub mod swarm;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use opcount::{NoOps, OpCounter, OpCounts, OpSink, Process};
pub use params::OfdmParams;
pub use signal::ComplexVector;
