//! Empirical complementary CDF of PAPR samples.

use std::io::Write;

use rayon::prelude::*;
use swan_core::NoOps;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::trial::{Experiment, TrialOutcome};

/// Threshold grid in dB: `0.0, 0.1, ..., 14.0`.
pub fn threshold_grid() -> Vec<f64> {
    (0..=140).map(|i| i as f64 / 10.0).collect()
}

/// Sorted PAPR samples with their exceedance curve on the fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CcdfCurve {
    samples_db: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub exceed_prob: Vec<f64>,
}

impl CcdfCurve {
    pub fn from_samples(samples_db: &[f64]) -> Result<Self, HarnessError> {
        if samples_db.is_empty() || samples_db.iter().any(|v| !v.is_finite()) {
            return Err(HarnessError::Invalid("CCDF needs finite samples".into()));
        }
        let mut s = samples_db.to_vec();
        s.sort_by(f64::total_cmp);
        let thresholds = threshold_grid();
        let n = s.len() as f64;
        let exceed_prob = thresholds
            .iter()
            .map(|&x| (s.len() - s.partition_point(|&v| v <= x)) as f64 / n)
            .collect();
        Ok(Self {
            samples_db: s,
            thresholds,
            exceed_prob,
        })
    }

    pub fn trials(&self) -> usize {
        self.samples_db.len()
    }

    pub fn samples_db(&self) -> &[f64] {
        &self.samples_db
    }

    /// `P(PAPR > x)` at any `x`.
    pub fn exceedance(&self, x: f64) -> f64 {
        let above = self.samples_db.len() - self.samples_db.partition_point(|&v| v <= x);
        above as f64 / self.samples_db.len() as f64
    }

    /// Smallest sample `x` with `P(PAPR > x) <= p`.
    pub fn crossing(&self, p: f64) -> f64 {
        let n = self.samples_db.len();
        let k = ((p * n as f64).floor() as usize).min(n - 1);
        self.samples_db[n - 1 - k]
    }

    /// Writes `papr0_db,exceed_prob` rows on the grid.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "papr0_db,exceed_prob")?;
        for (x, p) in self.thresholds.iter().zip(&self.exceed_prob) {
            writeln!(w, "{x:.1},{p}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Half-width of the normal-approximation binomial interval at `z`.
pub fn binomial_half_width(p: f64, n: usize, z: f64) -> f64 {
    z * (p * (1.0 - p) / n as f64).sqrt()
}

/// `a` is not to the right of `b` at exceedance `p`, up to the 95% binomial
/// half-width: `P_b(x_a) >= p - hw`, with `x_a` the `p`-crossing of `a`.
pub fn not_right_of(a: &CcdfCurve, b: &CcdfCurve, p: f64) -> bool {
    let hw = binomial_half_width(p, b.trials(), 1.96);
    b.exceedance(a.crossing(p)) >= p - hw
}

/// Runs all trials of `cfg` on `cfg.threads` workers (or the global pool).
/// Results are in trial order regardless of scheduling.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialOutcome>, HarnessError> {
    let exp = Experiment::new(cfg)?;
    let work = || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| exp.run_trial::<NoOps>(t).map(|(o, _)| o))
            .collect::<Result<Vec<_>, _>>()
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::Invalid(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

pub fn run_ccdf(cfg: &ExperimentConfig) -> Result<CcdfCurve, HarnessError> {
    let outcomes = run_trials(cfg)?;
    let samples: Vec<f64> = outcomes.iter().map(|o| o.papr_db).collect();
    CcdfCurve::from_samples(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_and_crossing() {
        let c = CcdfCurve::from_samples(&[7.25]).unwrap();
        assert_eq!(c.exceedance(7.2), 1.0);
        assert_eq!(c.exceedance(7.3), 0.0);
        assert_eq!(c.exceed_prob[72], 1.0);
        assert_eq!(c.exceed_prob[73], 0.0);
        let s: Vec<f64> = (0..100).map(|i| i as f64 / 10.0).collect();
        let c = CcdfCurve::from_samples(&s).unwrap();
        assert_eq!(c.crossing(0.01), 9.8);
        assert!(c.exceedance(9.8) <= 0.01);
        assert!(c.exceed_prob.windows(2).all(|w| w[0] >= w[1]));
        assert!(CcdfCurve::from_samples(&[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let c = CcdfCurve::from_samples(&[1.0, 2.0]).unwrap();
        let text = c.to_csv_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "papr0_db,exceed_prob");
        assert_eq!(lines.len(), 142);
        assert_eq!(lines[1], "0.0,1");
        assert_eq!(lines[11], "1.0,0.5");
        assert_eq!(lines[141], "14.0,0");
    }
}
