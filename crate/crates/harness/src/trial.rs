//! One Monte-Carlo trial: random data, a channel, SVD precoding and the
//! configured PAPR-reduction scheme.
//!
//! Seeds: trial `t` uses `derive_seed(derive_seed(master, TRIAL), t)`, from
//! which the data, channel and optimizer streams are split. The SLM codebook
//! and the fixed-channel realization come from the master seed directly.

use num_complex::Complex64;
use rand::Rng;
use swan_core::mimo::{generate_channel, svd_precode, ChannelRealization, MultipathProfile};
use swan_core::qam::{map_symbols, QamConstellation};
use swan_core::rng::{derive_seed, rng_from_seed, stream};
use swan_core::schemes::{
    exhaustive_search, partition, slm_transform, Candidate, CandidateEvaluator, SlmCodebook,
};
use swan_core::signal::{oversampled_ifft, papr_linear, to_db};
use swan_core::swarm::{
    csa_run, ga_run, pso_run, swan_run, CsaParams, DirectObjective, GaParams, Objective, OperatorTally, PsoParams,
    TwoStageObjective,
};
use swan_core::{NoOps, OpCounter, OpSink};

use crate::config::{ExperimentConfig, Optimizer, Scheme};
use crate::error::HarnessError;

/// Counters that can be created empty and folded together.
pub trait Sink: OpSink + Default {
    fn absorb(&mut self, other: &Self);
}

impl Sink for NoOps {
    fn absorb(&mut self, _: &Self) {}
}

impl Sink for OpCounter {
    fn absorb(&mut self, other: &Self) {
        self.merge(other);
    }
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    /// Min-max PAPR after the scheme, linear.
    pub papr: f64,
    pub papr_db: f64,
    /// Grid candidates or budget units spent by the search.
    pub evaluations: u64,
    pub candidate: Option<Candidate>,
    pub slm_index: Option<usize>,
    /// Operator invocations of a swarm search and its position dimension.
    pub tally: Option<(OperatorTally, usize)>,
}

/// Per-experiment state shared by all trials.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub cfg: ExperimentConfig,
    profile: MultipathProfile,
    constellation: QamConstellation,
    codebook: Option<SlmCodebook>,
    fixed_channel: Option<ChannelRealization>,
}

pub fn trial_seed(master: u64, t: usize) -> u64 {
    derive_seed(derive_seed(master, stream::TRIAL), t as u64)
}

impl Experiment {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self, HarnessError> {
        cfg.validate()?;
        let profile = MultipathProfile::uniform(cfg.n_paths)?;
        let constellation = QamConstellation::new(cfg.qam_order)?;
        let codebook = match cfg.scheme {
            Scheme::Slm => Some(SlmCodebook::random(
                cfg.v,
                cfg.n_c,
                derive_seed(cfg.seed, stream::CODEBOOK),
            )?),
            _ => None,
        };
        let fixed_channel = if cfg.fixed_channel {
            Some(generate_channel(
                &profile,
                cfg.n_tx,
                cfg.n_rx,
                cfg.n_c,
                derive_seed(cfg.seed, stream::CHANNEL),
            )?)
        } else {
            None
        };
        Ok(Self {
            cfg: cfg.clone(),
            profile,
            constellation,
            codebook,
            fixed_channel,
        })
    }

    /// Precoded per-antenna spectra of trial `t`.
    pub fn precoded_symbol(&self, t: usize) -> Result<Vec<Vec<Complex64>>, HarnessError> {
        let cfg = &self.cfg;
        let seed = trial_seed(cfg.seed, t);
        let mut rng = rng_from_seed(derive_seed(seed, stream::DATA));
        let bps = self.constellation.bits_per_symbol();
        let streams: Vec<Vec<Complex64>> = (0..cfg.n_tx)
            .map(|_| {
                let bits: Vec<u8> = (0..cfg.n_c * bps).map(|_| rng.random_range(0..2u8)).collect();
                map_symbols(&bits, &self.constellation).map(|v| v.into_inner())
            })
            .collect::<Result<_, _>>()?;
        let fresh;
        let ch = match &self.fixed_channel {
            Some(c) => c,
            None => {
                fresh = generate_channel(
                    &self.profile,
                    cfg.n_tx,
                    cfg.n_rx,
                    cfg.n_c,
                    derive_seed(seed, stream::CHANNEL),
                )?;
                &fresh
            }
        };
        Ok(svd_precode(&streams, ch)?)
    }

    /// Runs trial `t`, charging every counted operation to a fresh `C`.
    pub fn run_trial<C: Sink>(&self, t: usize) -> Result<(TrialOutcome, C), HarnessError> {
        let spectra = self.precoded_symbol(t)?;
        self.run_on_symbol(&spectra, trial_seed(self.cfg.seed, t))
    }

    /// Applies the configured scheme to given precoded spectra.
    pub fn run_on_symbol<C: Sink>(
        &self,
        spectra: &[Vec<Complex64>],
        seed: u64,
    ) -> Result<(TrialOutcome, C), HarnessError> {
        let cfg = &self.cfg;
        let mut ops = C::default();
        let outcome = |papr: f64, evaluations, candidate, slm_index| TrialOutcome {
            papr,
            papr_db: to_db(papr),
            evaluations,
            candidate,
            slm_index,
            tally: None,
        };
        match cfg.scheme {
            Scheme::None => {
                let mut worst = 0.0f64;
                for s in spectra {
                    worst = worst.max(papr_linear(&oversampled_ifft(s, cfg.l)?)?);
                }
                Ok((outcome(worst, 1, None, None), ops))
            }
            Scheme::Slm => {
                let cb = self.codebook.as_ref().expect("codebook built for SLM");
                let r = slm_transform(spectra, cb, cfg.l, &mut ops)?;
                Ok((outcome(r.papr, cb.len() as u64, None, Some(r.index)), ops))
            }
            Scheme::Pts | Scheme::CsPts => {
                let params = cfg.ofdm()?;
                let parts = partition(spectra, &params, cfg.layout, &mut ops)?;
                let ev = CandidateEvaluator::new(&parts)?;
                let opt_seed = derive_seed(seed, stream::OPTIMIZER);
                let (cand, papr, evals, tally) = self.search(&ev, opt_seed, &mut ops)?;
                let mut o = outcome(papr, evals, Some(cand), None);
                o.tally = tally;
                Ok((o, ops))
            }
        }
    }

    fn search<C: Sink>(
        &self,
        ev: &CandidateEvaluator,
        seed: u64,
        ops: &mut C,
    ) -> Result<(Candidate, f64, u64, Option<(OperatorTally, usize)>), HarnessError> {
        let cfg = &self.cfg;
        if cfg.optimizer == Optimizer::Exhaustive || ev.params().m_partitions == 1 {
            let r = exhaustive_search(ev, cfg.eval_cap, ops)?;
            return Ok((r.candidate, r.papr, r.evaluations, None));
        }
        let mut sol_ops = C::default();
        let (best, run, dim, obj_ops) = match cfg.optimizer {
            Optimizer::Swan if cfg.two_stage => {
                let mut obj = TwoStageObjective::new(ev, cfg.rho2, derive_seed(seed, stream::EXPANSION), C::default())?;
                let r = swan_run(&mut obj, &cfg.swan_params(), seed, &mut sol_ops)?;
                (obj.best().cloned(), r, obj.dim(), obj.into_ops())
            }
            opt => {
                let mut obj = DirectObjective::new(ev, C::default());
                let r = match opt {
                    Optimizer::Swan => swan_run(&mut obj, &cfg.swan_params(), seed, &mut sol_ops)?,
                    Optimizer::Csa => csa_run(&mut obj, &self.csa_params(), seed, &mut sol_ops)?,
                    Optimizer::Pso => pso_run(&mut obj, &self.pso_params(), seed, &mut sol_ops)?,
                    Optimizer::Ga => ga_run(&mut obj, &self.ga_params(), seed, &mut sol_ops)?,
                    Optimizer::Exhaustive => unreachable!("handled above"),
                };
                (obj.best().cloned(), r, obj.dim(), obj.into_ops())
            }
        };
        ops.absorb(&obj_ops);
        ops.absorb(&sol_ops);
        let (cand, papr) = best.expect("at least one evaluation");
        Ok((cand, papr, run.evaluations, Some((run.tally, dim))))
    }

    pub fn csa_params(&self) -> CsaParams {
        CsaParams {
            n_nests: self.cfg.swarm_size,
            p_a: self.cfg.p_a,
            alpha: self.cfg.alpha,
            beta: self.cfg.beta,
            budget: self.cfg.rho,
        }
    }

    pub fn pso_params(&self) -> PsoParams {
        PsoParams {
            n_particles: self.cfg.swarm_size,
            budget: self.cfg.rho,
            ..PsoParams::default()
        }
    }

    pub fn ga_params(&self) -> GaParams {
        GaParams {
            population: self.cfg.swarm_size,
            budget: self.cfg.rho,
            ..GaParams::default()
        }
    }
}
