//! Experiment configuration and its `key = value` file format.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use swan_core::schemes::PartitionLayout;
use swan_core::swarm::SwanParams;
use swan_core::OfdmParams;

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    None,
    Slm,
    Pts,
    CsPts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimizer {
    Exhaustive,
    Swan,
    Csa,
    Pso,
    Ga,
}

macro_rules! named_enum {
    ($t:ty, $($v:path => $s:literal),+ $(,)?) => {
        impl $t {
            pub fn name(self) -> &'static str {
                match self { $($v => $s),+ }
            }
        }
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($s => Ok($v),)+
                    other => Err(format!("unknown value '{other}'")),
                }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_enum!(Scheme, Scheme::None => "none", Scheme::Slm => "slm", Scheme::Pts => "pts", Scheme::CsPts => "cspts");
named_enum!(
    Optimizer,
    Optimizer::Exhaustive => "exhaustive",
    Optimizer::Swan => "swan",
    Optimizer::Csa => "csa",
    Optimizer::Pso => "pso",
    Optimizer::Ga => "ga",
);

/// Everything needed to run one CCDF curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scheme: Scheme,
    pub optimizer: Optimizer,
    pub n_c: usize,
    pub l: usize,
    pub m: usize,
    pub u: usize,
    pub d: usize,
    /// SLM codebook size.
    pub v: usize,
    pub layout: PartitionLayout,
    pub n_tx: usize,
    pub n_rx: usize,
    pub n_paths: usize,
    pub qam_order: usize,
    pub trials: usize,
    /// Evaluation budget for swarm optimizers.
    pub rho: u64,
    /// Children per intermediate node in two-stage SWAN.
    pub rho2: usize,
    /// SWAN searches phases only and expands shifts at random.
    pub two_stage: bool,
    pub seed: u64,
    /// Reuse one channel realization for every trial.
    pub fixed_channel: bool,
    pub eval_cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub swarm_size: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p_a: f64,
    pub phi: f64,
    pub nu: f64,
    pub n_h: usize,
    pub geometric_triad: bool,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let s = SwanParams::default();
        Self {
            scheme: Scheme::CsPts,
            optimizer: Optimizer::Exhaustive,
            n_c: 256,
            l: 4,
            m: 4,
            u: 4,
            d: 8,
            v: 16,
            layout: PartitionLayout::Adjacent,
            n_tx: 4,
            n_rx: 4,
            n_paths: 16,
            qam_order: 64,
            trials: 10_000,
            rho: 270,
            rho2: 3,
            two_stage: true,
            seed: 1,
            fixed_channel: false,
            eval_cap: swan_core::schemes::DEFAULT_EVALUATION_CAP,
            threads: None,
            swarm_size: s.n_nests,
            alpha: crate::DEFAULT_CSPTS_ALPHA,
            beta: s.beta,
            p_a: s.p_a,
            phi: s.phi,
            nu: s.nu,
            n_h: s.n_h,
            geometric_triad: s.geometric_triad,
            out: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse::<T>()
        .map_err(|e| format!("bad value for {key}: {e}"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("bad value for {key}: '{other}' is not a boolean")),
    }
}

impl ExperimentConfig {
    /// Sets one field by name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let k = key.trim();
        match k {
            "scheme" => self.scheme = parse(k, value)?,
            "optimizer" => self.optimizer = parse(k, value)?,
            "n_c" => self.n_c = parse(k, value)?,
            "l" => self.l = parse(k, value)?,
            "m" => self.m = parse(k, value)?,
            "u" => self.u = parse(k, value)?,
            "d" => self.d = parse(k, value)?,
            "v" => self.v = parse(k, value)?,
            "layout" => {
                self.layout = match value.trim() {
                    "adjacent" => PartitionLayout::Adjacent,
                    "interleaved" => PartitionLayout::Interleaved,
                    other => return Err(format!("bad value for layout: '{other}'")),
                }
            }
            "n_tx" => self.n_tx = parse(k, value)?,
            "n_rx" => self.n_rx = parse(k, value)?,
            "antennas" => {
                let n: usize = parse(k, value)?;
                self.n_tx = n;
                self.n_rx = n;
            }
            "n_paths" => self.n_paths = parse(k, value)?,
            "qam_order" => self.qam_order = parse(k, value)?,
            "trials" => self.trials = parse(k, value)?,
            "rho" => self.rho = parse(k, value)?,
            "rho2" => self.rho2 = parse(k, value)?,
            "two_stage" => self.two_stage = parse_bool(k, value)?,
            "seed" => self.seed = parse(k, value)?,
            "fixed_channel" => self.fixed_channel = parse_bool(k, value)?,
            "eval_cap" => self.eval_cap = parse(k, value)?,
            "threads" => self.threads = Some(parse(k, value)?),
            "swarm_size" => self.swarm_size = parse(k, value)?,
            "alpha" => self.alpha = parse(k, value)?,
            "beta" => self.beta = parse(k, value)?,
            "p_a" => self.p_a = parse(k, value)?,
            "phi" => self.phi = parse(k, value)?,
            "nu" => self.nu = parse(k, value)?,
            "n_h" => self.n_h = parse(k, value)?,
            "geometric_triad" => self.geometric_triad = parse_bool(k, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Parses `key = value` lines on top of the defaults. Blank lines and
    /// text after `#` are ignored.
    pub fn parse_str(text: &str) -> Result<Self, HarnessError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| HarnessError::Config { line: i + 1, message };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            cfg.set(k, v).map_err(err)?;
        }
        Ok(cfg)
    }

    pub fn ofdm(&self) -> Result<OfdmParams, HarnessError> {
        let (u, d) = match self.scheme {
            Scheme::Pts => (self.u, 1),
            _ => (self.u, self.d),
        };
        OfdmParams::new(self.n_c, self.l, self.m, u, d).map_err(HarnessError::from)
    }

    pub fn swan_params(&self) -> SwanParams {
        SwanParams {
            n_nests: self.swarm_size,
            p_a: self.p_a,
            alpha: self.alpha,
            beta: self.beta,
            phi: self.phi,
            nu: self.nu,
            n_h: self.n_h,
            budget: self.rho,
            geometric_triad: self.geometric_triad,
        }
    }

    /// Checks ranges and scheme/optimizer compatibility.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let invalid = |m: String| Err(HarnessError::Invalid(m));
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        if self.n_tx == 0 || self.n_rx == 0 {
            return invalid("antenna counts must be positive".into());
        }
        if matches!(self.scheme, Scheme::None | Scheme::Slm | Scheme::Pts) && self.optimizer != Optimizer::Exhaustive {
            return invalid(format!(
                "scheme {} only runs with the exhaustive optimizer, not {}",
                self.scheme, self.optimizer
            ));
        }
        if self.scheme == Scheme::Slm && self.v == 0 {
            return invalid("SLM needs v >= 1".into());
        }
        if self.threads == Some(0) {
            return invalid("threads must be positive".into());
        }
        if self.n_paths == 0 || self.n_paths > self.n_c {
            return invalid(format!("n_paths = {} must lie in 1..=n_c", self.n_paths));
        }
        if !matches!(self.qam_order, 4 | 16 | 64) {
            return invalid(format!("qam_order = {} not in {{4, 16, 64}}", self.qam_order));
        }
        self.ofdm()?;
        if self.scheme == Scheme::CsPts && self.optimizer == Optimizer::Swan {
            self.swan_params().validate()?;
            if self.two_stage && self.rho2 == 0 {
                return invalid("rho2 must be at least 1".into());
            }
        }
        Ok(())
    }

    /// Short curve label, e.g. `cspts-swan-rho270`.
    pub fn label(&self) -> String {
        match (self.scheme, self.optimizer) {
            (Scheme::None, _) => format!("none-{}x{}", self.n_tx, self.n_rx),
            (Scheme::Slm, _) => format!("slm-v{}", self.v),
            (Scheme::Pts, _) => format!("pts-m{}-u{}", self.m, self.u),
            (Scheme::CsPts, Optimizer::Exhaustive) => format!("cspts-m{}-u{}-d{}-optimal", self.m, self.u, self.d),
            (Scheme::CsPts, o) => format!("cspts-{}-rho{}", o, self.rho),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_errors() {
        let cfg = ExperimentConfig::parse_str("# c\nscheme = slm\n v = 4 # four\n\ntrials=3\nfixed_channel = yes\n").unwrap();
        assert_eq!(cfg.scheme, Scheme::Slm);
        assert_eq!(cfg.v, 4);
        assert_eq!(cfg.trials, 3);
        assert!(cfg.fixed_channel);
        match ExperimentConfig::parse_str("trials = 2\nbogus = 1\n") {
            Err(HarnessError::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match ExperimentConfig::parse_str("trials 2\n") {
            Err(HarnessError::Config { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compatibility() {
        let mut cfg = ExperimentConfig {
            scheme: Scheme::Pts,
            optimizer: Optimizer::Swan,
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.optimizer = Optimizer::Exhaustive;
        assert!(cfg.validate().is_ok());
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
    }
}
