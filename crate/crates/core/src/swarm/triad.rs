//! Geometry of the best-triad mating step.

/// Incenter and normalized in-radius of the top-three triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct TriadGeometry {
    pub gamma: Vec<f64>,
    /// `sqrt(8 prod_i (1/2 - a_i / p))`, with `a_i` the side opposite vertex
    /// `i` and `p` the perimeter. Equals in-radius over semi-perimeter, at
    /// most `1/sqrt(27)`.
    pub epsilon: f64,
    pub perimeter: f64,
    pub degenerate: bool,
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

const DEGENERATE_TOL: f64 = 1e-12;

/// Incenter `(a1 q1 + a2 q2 + a3 q3) / p` and `epsilon`.
///
/// A triangle with zero area yields `degenerate = true`, `epsilon = 0` and
/// `gamma` equal to the mean of the vertices weighted by `weights`
/// (typically their fitness values).
pub fn triad_geometry(q1: &[f64], q2: &[f64], q3: &[f64], weights: [f64; 3]) -> TriadGeometry {
    let a1 = dist(q2, q3);
    let a2 = dist(q3, q1);
    let a3 = dist(q1, q2);
    let p = a1 + a2 + a3;
    let prod = if p > 0.0 {
        [a1, a2, a3].iter().map(|a| 0.5 - a / p).product::<f64>()
    } else {
        0.0
    };
    if p <= DEGENERATE_TOL || prod <= DEGENERATE_TOL * DEGENERATE_TOL {
        let w: f64 = weights.iter().sum();
        let w = if w > 0.0 { weights.map(|x| x / w) } else { [1.0 / 3.0; 3] };
        let gamma = (0..q1.len())
            .map(|d| w[0] * q1[d] + w[1] * q2[d] + w[2] * q3[d])
            .collect();
        return TriadGeometry {
            gamma,
            epsilon: 0.0,
            perimeter: p,
            degenerate: true,
        };
    }
    let gamma = (0..q1.len())
        .map(|d| (a1 * q1[d] + a2 * q2[d] + a3 * q3[d]) / p)
        .collect();
    TriadGeometry {
        gamma,
        epsilon: (8.0 * prod).sqrt(),
        perimeter: p,
        degenerate: false,
    }
}

/// Fitness-weighted reference `((F2 + F3) gamma + F1 q1) / (F1 + F2 + F3)`.
pub fn triad_reference(gamma: &[f64], q1: &[f64], f: [f64; 3]) -> Vec<f64> {
    let total: f64 = f.iter().sum();
    let wg = (f[1] + f[2]) / total;
    let wq = f[0] / total;
    gamma.iter().zip(q1).map(|(g, q)| wg * g + wq * q).collect()
}

/// Step scales `kappa_l = eps_l nu + eps_l phi max((F1 - F2 - F3) / sum F, 0)`
/// with `eps_l = l eps / 2`, for `l = 1, 2, 3`.
pub fn triad_scales(epsilon: f64, f: [f64; 3], phi: f64, nu: f64) -> [f64; 3] {
    let total: f64 = f.iter().sum();
    let excess = ((f[0] - (f[1] + f[2])) / total).max(0.0);
    [1.0, 2.0, 3.0].map(|l| {
        let e = l * epsilon / 2.0;
        e * nu + e * phi * excess
    })
}
