//! Named experiment sets reproducing the standard comparison figures.

use crate::config::{ExperimentConfig, Optimizer, Scheme};

pub const PRESET_NAMES: [&str; 6] = ["fig5", "fig6", "fig7", "fig8", "fig9", "fig10"];

/// Default trial count for presets. Points near `1e-4` need about `1e5`.
pub const PRESET_TRIALS: usize = 10_000;

fn base() -> ExperimentConfig {
    ExperimentConfig {
        trials: PRESET_TRIALS,
        ..ExperimentConfig::default()
    }
}

fn cspts(optimizer: Optimizer, rho: u64) -> ExperimentConfig {
    ExperimentConfig {
        scheme: Scheme::CsPts,
        optimizer,
        rho,
        ..base()
    }
}

/// The curves of a preset, or `None` for an unknown name.
pub fn preset(name: &str) -> Option<Vec<ExperimentConfig>> {
    let none = |n: usize| ExperimentConfig {
        scheme: Scheme::None,
        n_tx: n,
        n_rx: n,
        ..base()
    };
    let curves = match name {
        "fig5" => [1, 2, 3, 4, 6].into_iter().map(none).collect(),
        "fig6" => std::iter::once(none(4))
            .chain([4, 16, 64, 256, 1024, 4096].into_iter().map(|v| ExperimentConfig {
                scheme: Scheme::Slm,
                v,
                ..base()
            }))
            .collect(),
        "fig7" => std::iter::once(none(4))
            .chain([(2, 2), (2, 4), (2, 8), (4, 2), (4, 4), (4, 8), (8, 2)].into_iter().map(|(m, u)| {
                ExperimentConfig {
                    scheme: Scheme::Pts,
                    m,
                    u,
                    ..base()
                }
            }))
            .collect(),
        "fig8" => std::iter::once(none(4))
            .chain(
                [(2, 2, 2), (2, 4, 4), (2, 8, 8), (4, 2, 2), (4, 4, 4), (4, 4, 8)]
                    .into_iter()
                    .map(|(m, u, d)| ExperimentConfig {
                        scheme: Scheme::CsPts,
                        m,
                        u,
                        d,
                        ..base()
                    }),
            )
            .collect(),
        "fig9" => {
            let mut v = vec![cspts(Optimizer::Exhaustive, 0)];
            for rho in [270, 540, 1080, 2160, 4320] {
                v.push(cspts(Optimizer::Csa, rho));
                v.push(cspts(Optimizer::Swan, rho));
            }
            v
        }
        "fig10" => {
            let mut v = vec![cspts(Optimizer::Exhaustive, 0)];
            for rho in [270, 1080, 4320] {
                for o in [Optimizer::Swan, Optimizer::Csa, Optimizer::Pso, Optimizer::Ga] {
                    v.push(cspts(o, rho));
                }
            }
            v
        }
        _ => return None,
    };
    Some(curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for name in PRESET_NAMES {
            let curves = preset(name).unwrap();
            assert!(!curves.is_empty());
            for c in curves {
                c.validate().unwrap();
            }
        }
        assert!(preset("fig11").is_none());
    }
}
