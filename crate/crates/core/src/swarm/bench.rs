//! Benchmark functions with known optima.

use std::f64::consts::{E, PI, TAU};

use super::Objective;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkKind {
    /// `sum x^2` on `[-5.12, 5.12]^n`; 0 at the origin.
    Sphere,
    /// On `[-32.768, 32.768]^n`; 0 at the origin.
    Ackley,
    /// `-sum sin(x_i) sin(i x_i^2 / pi)^20` on `[0, pi]^n`.
    Michalewicz,
    /// On `[-600, 600]^n`; 0 at the origin.
    Griewank,
    /// Two-dimensional, on `[-100, 100]^2`; -1 at `(pi, pi)`.
    Easom,
}

impl BenchmarkKind {
    pub const ALL: [BenchmarkKind; 5] = [
        BenchmarkKind::Sphere,
        BenchmarkKind::Ackley,
        BenchmarkKind::Michalewicz,
        BenchmarkKind::Griewank,
        BenchmarkKind::Easom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Sphere => "sphere",
            BenchmarkKind::Ackley => "ackley",
            BenchmarkKind::Michalewicz => "michalewicz",
            BenchmarkKind::Griewank => "griewank",
            BenchmarkKind::Easom => "easom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Benchmark {
    pub kind: BenchmarkKind,
    dim: usize,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, dim: usize) -> Result<Self> {
        if dim == 0 || (kind == BenchmarkKind::Easom && dim != 2) {
            return Err(Error::invalid(format!("{} does not take dimension {dim}", kind.name())));
        }
        Ok(Self { kind, dim })
    }

    /// Known global minimum value, where tabulated.
    pub fn optimum_value(&self) -> Option<f64> {
        match self.kind {
            BenchmarkKind::Sphere | BenchmarkKind::Ackley | BenchmarkKind::Griewank => Some(0.0),
            BenchmarkKind::Easom => Some(-1.0),
            BenchmarkKind::Michalewicz => match self.dim {
                2 => Some(-1.801_303_4),
                5 => Some(-4.687_658),
                10 => Some(-9.660_15),
                _ => None,
            },
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let n = x.len() as f64;
        match self.kind {
            BenchmarkKind::Sphere => x.iter().map(|v| v * v).sum(),
            BenchmarkKind::Ackley => {
                let s1 = x.iter().map(|v| v * v).sum::<f64>() / n;
                let s2 = x.iter().map(|v| (TAU * v).cos()).sum::<f64>() / n;
                -20.0 * (-0.2 * s1.sqrt()).exp() - s2.exp() + 20.0 + E
            }
            BenchmarkKind::Michalewicz => -x
                .iter()
                .enumerate()
                .map(|(i, v)| v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(20))
                .sum::<f64>(),
            BenchmarkKind::Griewank => {
                let s = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let p: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                s - p + 1.0
            }
            BenchmarkKind::Easom => {
                let (a, b) = (x[0], x[1]);
                -a.cos() * b.cos() * (-((a - PI).powi(2) + (b - PI).powi(2))).exp()
            }
        }
    }
}

impl Objective for Benchmark {
    fn dim(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> Vec<(f64, f64)> {
        let b = match self.kind {
            BenchmarkKind::Sphere => (-5.12, 5.12),
            BenchmarkKind::Ackley => (-32.768, 32.768),
            BenchmarkKind::Michalewicz => (0.0, PI),
            BenchmarkKind::Griewank => (-600.0, 600.0),
            BenchmarkKind::Easom => (-100.0, 100.0),
        };
        vec![b; self.dim]
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.value(x)
    }
}

/// The full suite at dimension `dim` (Easom is always two-dimensional).
pub fn benchmark_suite(dim: usize) -> Result<Vec<Benchmark>> {
    BenchmarkKind::ALL
        .into_iter()
        .map(|k| Benchmark::new(k, if k == BenchmarkKind::Easom { 2 } else { dim }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_optima() {
        let z = [0.0; 4];
        assert_eq!(Benchmark::new(BenchmarkKind::Sphere, 4).unwrap().value(&z), 0.0);
        assert!(Benchmark::new(BenchmarkKind::Ackley, 4).unwrap().value(&z).abs() < 1e-12);
        assert!(Benchmark::new(BenchmarkKind::Griewank, 4).unwrap().value(&z).abs() < 1e-12);
        let e = Benchmark::new(BenchmarkKind::Easom, 2).unwrap();
        assert!((e.value(&[PI, PI]) + 1.0).abs() < 1e-12);
        let m = Benchmark::new(BenchmarkKind::Michalewicz, 2).unwrap();
        assert!((m.value(&[2.20290552, 1.57079633]) - m.optimum_value().unwrap()).abs() < 1e-6);
        assert!(Benchmark::new(BenchmarkKind::Easom, 3).is_err());
        assert_eq!(benchmark_suite(4).unwrap().len(), 5);
        assert_eq!(BenchmarkKind::from_name("ackley"), Some(BenchmarkKind::Ackley));
    }
}
