//! Monte-Carlo experiments on top of `swan-core`: CCDF estimation,
//! operation-count verification and named presets.

pub mod benchfn;
pub mod ccdf;
pub mod config;
pub mod error;
pub mod ops;
pub mod presets;
pub mod trial;

pub use ccdf::{run_ccdf, CcdfCurve};
pub use config::{ExperimentConfig, Optimizer, Scheme};
pub use error::HarnessError;
pub use trial::{Experiment, TrialOutcome};

/// Levy scale used for CS-PTS searches.
pub const DEFAULT_CSPTS_ALPHA: f64 = 1.0;
