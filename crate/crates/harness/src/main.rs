//! `swan` command-line entry point.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swan_core::swarm::BenchmarkKind;
use swan_harness::benchfn::bench_repeated;
use swan_harness::ccdf::run_ccdf;
use swan_harness::ops::measured_vs_predicted;
use swan_harness::presets::{preset, PRESET_NAMES};
use swan_harness::{Experiment, ExperimentConfig, HarnessError, Optimizer};

#[derive(Parser)]
#[command(name = "swan", version, about = "PAPR reduction experiments for SVD-precoded MIMO-OFDM")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment and write its CCDF as CSV.
    Ccdf(Common),
    /// Exhaustively search one symbol and print the best candidate.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Trial index whose symbol is searched.
        #[arg(long, default_value_t = 0)]
        trial: usize,
    },
    /// Compare instrumented operation counts with the closed forms.
    Ops(Common),
    /// Compare optimizers on benchmark functions.
    BenchFn(BenchArgs),
    /// Run every curve of a named figure preset.
    Preset {
        /// One of fig5 ... fig10.
        name: String,
        #[command(flatten)]
        common: Common,
        /// Print the curve configurations instead of running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Config file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of Monte-Carlo trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Output file (or directory for presets).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra `key=value` overrides applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated benchmark names.
    #[arg(long, default_value = "sphere,ackley", value_delimiter = ',')]
    functions: Vec<String>,
    /// Comma-separated optimizers.
    #[arg(long, default_value = "swan,csa,pso,ga", value_delimiter = ',')]
    optimizers: Vec<Optimizer>,
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Evaluations per run.
    #[arg(long, default_value_t = 2000)]
    budget: u64,
    /// Independent runs per optimizer.
    #[arg(long, default_value_t = 50)]
    runs: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl Common {
    fn apply(&self, mut cfg: ExperimentConfig) -> Result<ExperimentConfig, HarnessError> {
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| HarnessError::Invalid(format!("--set expects KEY=VALUE, got '{kv}'")))?;
            cfg.set(k, v).map_err(HarnessError::Invalid)?;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        Ok(cfg)
    }

    fn load(&self) -> Result<ExperimentConfig, HarnessError> {
        let base = match &self.config {
            Some(path) => ExperimentConfig::parse_str(&fs::read_to_string(path)?)?,
            None => ExperimentConfig::default(),
        };
        let cfg = self.apply(base)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write_curve(cfg: &ExperimentConfig, path: Option<&Path>) -> Result<(), HarnessError> {
    let curve = run_ccdf(cfg)?;
    match path {
        Some(p) => curve.write_csv(io::BufWriter::new(fs::File::create(p)?))?,
        None => curve.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Ccdf(common) => {
            let cfg = common.load()?;
            write_curve(&cfg, cfg.out.as_deref())
        }
        Command::Oracle { common, trial } => {
            let mut cfg = common.load()?;
            cfg.optimizer = Optimizer::Exhaustive;
            cfg.validate()?;
            let (o, _) = Experiment::new(&cfg)?.run_trial::<swan_core::NoOps>(trial)?;
            let mut out = io::stdout().lock();
            writeln!(out, "config: {}", cfg.label())?;
            writeln!(out, "trial: {trial}")?;
            if let Some(c) = &o.candidate {
                writeln!(out, "phase_index: {:?}", c.phase_index())?;
                writeln!(out, "shift_index: {:?}", c.shift_index())?;
                writeln!(out, "shift_samples: {:?}", c.shifts())?;
            }
            if let Some(i) = o.slm_index {
                writeln!(out, "slm_index: {i}")?;
            }
            writeln!(out, "evaluations: {}", o.evaluations)?;
            writeln!(out, "papr_linear: {:.12}", o.papr)?;
            writeln!(out, "papr_db: {:.6}", o.papr_db)?;
            Ok(())
        }
        Command::Ops(common) => {
            let cfg = common.load()?;
            let report = measured_vs_predicted(&cfg)?;
            print!("{}", report.render());
            let bad = report.mismatches();
            if bad.is_empty() {
                Ok(())
            } else {
                let names: Vec<_> = bad.iter().map(|r| r.process.name()).collect();
                Err(HarnessError::Assertion(format!("counts differ for {}", names.join(", "))))
            }
        }
        Command::BenchFn(b) => {
            let mut out = io::stdout().lock();
            writeln!(out, "{:<12} {:<6} {:>14} {:>14} {:>14}", "function", "opt", "median", "best", "worst")?;
            for name in &b.functions {
                let kind = BenchmarkKind::from_name(name)
                    .ok_or_else(|| HarnessError::Invalid(format!("unknown benchmark '{name}'")))?;
                let dim = if kind == BenchmarkKind::Easom { 2 } else { b.dim };
                for &opt in &b.optimizers {
                    let s = bench_repeated(kind, dim, opt, b.budget, b.runs, b.seed)?;
                    let best = s.finals.iter().copied().fold(f64::INFINITY, f64::min);
                    let worst = s.finals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    writeln!(out, "{:<12} {:<6} {:>14.6e} {:>14.6e} {:>14.6e}", name, opt.name(), s.median(), best, worst)?;
                }
            }
            Ok(())
        }
        Command::Preset { name, common, list } => {
            let curves = preset(&name).ok_or_else(|| {
                HarnessError::Invalid(format!("unknown preset '{name}'; expected one of {}", PRESET_NAMES.join(", ")))
            })?;
            let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
            for (i, base) in curves.into_iter().enumerate() {
                let overrides = Common {
                    config: None,
                    seed: common.seed,
                    trials: common.trials,
                    out: None,
                    set: common.set.clone(),
                };
                let cfg = overrides.apply(base)?;
                cfg.validate()?;
                let file = dir.join(format!("{name}-{i:02}-{}.csv", cfg.label()));
                if list {
                    println!("{}", file.display());
                    continue;
                }
                fs::create_dir_all(&dir)?;
                write_curve(&cfg, Some(&file))?;
                eprintln!("wrote {}", file.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
