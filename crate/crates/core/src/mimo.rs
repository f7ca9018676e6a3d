//! Rayleigh multipath MIMO channels, per-subcarrier SVD and transmit
//! precoding.
//!
//! Each (receive, transmit) antenna pair draws its own tap vector from an
//! independent random stream, `derive_seed(seed, rx * n_tx + tx)`, so a
//! realization is reproducible regardless of generation order.

use std::f64::consts::PI;
use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};

/// Power-delay profile of a tapped-delay-line channel.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipathProfile {
    variances: Vec<f64>,
}

impl MultipathProfile {
    /// Equal-power taps, `1/n_p` each.
    pub fn uniform(n_p: usize) -> Result<Self> {
        if n_p == 0 {
            return Err(Error::invalid("profile needs at least one path"));
        }
        Self::new(vec![1.0 / n_p as f64; n_p])
    }

    /// Exponentially decaying taps normalized to unit total power.
    pub fn exponential(n_p: usize, decay_per_tap: f64) -> Result<Self> {
        if n_p == 0 || !(decay_per_tap > 0.0) {
            return Err(Error::invalid("exponential profile needs n_p >= 1 and decay > 0"));
        }
        let raw: Vec<f64> = (0..n_p).map(|p| (-decay_per_tap * p as f64).exp()).collect();
        let total: f64 = raw.iter().sum();
        Self::new(raw.into_iter().map(|v| v / total).collect())
    }

    pub fn new(variances: Vec<f64>) -> Result<Self> {
        if variances.is_empty() || variances.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::invalid("path variances must be positive and finite"));
        }
        let total: f64 = variances.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("path variances sum to {total}, not 1")));
        }
        Ok(Self { variances })
    }

    pub fn n_paths(&self) -> usize {
        self.variances.len()
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }
}

/// Per-subcarrier channel matrices with cached SVD factors
/// `H_k = U_k diag(sigma_k) V_k^H`.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    n_tx: usize,
    n_rx: usize,
    n_c: usize,
    seed: Option<u64>,
    taps: Vec<Vec<Complex64>>,
    h: Vec<DMatrix<Complex64>>,
    u: Vec<DMatrix<Complex64>>,
    sigma: Vec<Vec<f64>>,
    v: Vec<DMatrix<Complex64>>,
}

/// Draws a channel realization; see the module docs for the seeding rule.
pub fn generate_channel(
    profile: &MultipathProfile,
    n_tx: usize,
    n_rx: usize,
    n_c: usize,
    seed: u64,
) -> Result<ChannelRealization> {
    if profile.n_paths() > n_c {
        return Err(Error::invalid(format!(
            "{} paths exceed {} subcarriers",
            profile.n_paths(),
            n_c
        )));
    }
    if n_tx == 0 || n_rx == 0 {
        return Err(Error::invalid("antenna counts must be positive"));
    }
    let taps = (0..n_rx * n_tx)
        .map(|pair| {
            let mut rng = rng_from_seed(derive_seed(seed, pair as u64));
            profile
                .variances()
                .iter()
                .map(|&var| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    Complex64::new(re, im) * (var / 2.0).sqrt()
                })
                .collect()
        })
        .collect();
    let mut ch = ChannelRealization::from_taps(n_tx, n_rx, n_c, taps)?;
    ch.seed = Some(seed);
    Ok(ch)
}

fn first_nonzero_phase(col: impl Iterator<Item = Complex64>) -> Complex64 {
    col.into_iter()
        .find(|z| z.norm() > 1e-12)
        .map(|z| (z / z.norm()).conj())
        .unwrap_or(Complex64::new(1.0, 0.0))
}

/// Extends the orthonormal columns of `basis` (n x r) to an n x n unitary
/// matrix by Gram-Schmidt against the standard basis.
fn complete_unitary(basis: DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let mut cols: Vec<nalgebra::DVector<Complex64>> =
        (0..basis.ncols()).map(|j| basis.column(j).into_owned()).collect();
    let mut e = 0;
    while cols.len() < n && e < n {
        let mut cand = nalgebra::DVector::<Complex64>::zeros(n);
        cand[e] = Complex64::new(1.0, 0.0);
        for c in &cols {
            let proj = c.dotc(&cand);
            cand -= c * proj;
        }
        let norm = cand.norm();
        if norm > 1e-8 {
            cols.push(cand / Complex64::new(norm, 0.0));
        }
        e += 1;
    }
    DMatrix::from_columns(&cols)
}

fn factorize(h: &DMatrix<Complex64>) -> (DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>) {
    let n_tx = h.ncols();
    let svd = h.clone().svd(true, true);
    let u_raw = svd.u.expect("u requested");
    let v_raw = svd.v_t.expect("v requested").adjoint();
    let s_raw = svd.singular_values;
    let r = s_raw.len();

    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| s_raw[b].total_cmp(&s_raw[a]));

    let mut u = DMatrix::<Complex64>::zeros(u_raw.nrows(), r);
    let mut v_thin = DMatrix::<Complex64>::zeros(n_tx, r);
    let mut sigma = Vec::with_capacity(r);
    for (j, &src) in order.iter().enumerate() {
        let rot = first_nonzero_phase(v_raw.column(src).iter().copied());
        v_thin.set_column(j, &(v_raw.column(src) * rot));
        u.set_column(j, &(u_raw.column(src) * rot));
        sigma.push(s_raw[src].max(0.0));
    }
    let mut v = complete_unitary(v_thin, n_tx);
    for j in r..n_tx {
        let rot = first_nonzero_phase(v.column(j).iter().copied());
        let col = v.column(j) * rot;
        v.set_column(j, &col);
    }
    (u, sigma, v)
}

impl ChannelRealization {
    /// Builds the frequency response `h_k = sum_p tap_p exp(-j 2 pi k p / n_c)`
    /// for every antenna pair (taps indexed `rx * n_tx + tx`) and factorizes
    /// it per subcarrier.
    pub fn from_taps(n_tx: usize, n_rx: usize, n_c: usize, taps: Vec<Vec<Complex64>>) -> Result<Self> {
        if taps.len() != n_tx * n_rx {
            return Err(Error::SizeMismatch {
                expected: n_tx * n_rx,
                actual: taps.len(),
            });
        }
        if taps.iter().any(|t| t.is_empty() || t.len() > n_c) {
            return Err(Error::invalid("each tap vector needs 1..=n_c taps"));
        }
        let mut h = Vec::with_capacity(n_c);
        let mut u = Vec::with_capacity(n_c);
        let mut sigma = Vec::with_capacity(n_c);
        let mut v = Vec::with_capacity(n_c);
        for k in 0..n_c {
            let hk = DMatrix::from_fn(n_rx, n_tx, |rx, tx| {
                taps[rx * n_tx + tx]
                    .iter()
                    .enumerate()
                    .map(|(p, &g)| {
                        let e = ((k * p) % n_c) as f64;
                        g * Complex64::from_polar(1.0, -2.0 * PI * e / n_c as f64)
                    })
                    .sum()
            });
            let (uk, sk, vk) = factorize(&hk);
            h.push(hk);
            u.push(uk);
            sigma.push(sk);
            v.push(vk);
        }
        Ok(Self {
            n_tx,
            n_rx,
            n_c,
            seed: None,
            taps,
            h,
            u,
            sigma,
            v,
        })
    }

    /// Identity precoder on every subcarrier (flat, interference-free channel).
    pub fn identity(n_antennas: usize, n_c: usize) -> Result<Self> {
        let taps = (0..n_antennas * n_antennas)
            .map(|pair| {
                let diag = pair / n_antennas == pair % n_antennas;
                vec![Complex64::new(if diag { 1.0 } else { 0.0 }, 0.0)]
            })
            .collect();
        Self::from_taps(n_antennas, n_antennas, n_c, taps)
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }
    pub fn n_rx(&self) -> usize {
        self.n_rx
    }
    pub fn n_c(&self) -> usize {
        self.n_c
    }
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
    pub fn taps(&self) -> &[Vec<Complex64>] {
        &self.taps
    }
    pub fn n_paths(&self) -> usize {
        self.taps.iter().map(Vec::len).max().unwrap_or(0)
    }
    pub fn h(&self, k: usize) -> &DMatrix<Complex64> {
        &self.h[k]
    }
    /// Left singular vectors, `n_rx x min(n_tx, n_rx)`.
    pub fn u(&self, k: usize) -> &DMatrix<Complex64> {
        &self.u[k]
    }
    /// Right singular vectors, `n_tx x n_tx`, each column's first nonzero
    /// entry real and positive.
    pub fn v(&self, k: usize) -> &DMatrix<Complex64> {
        &self.v[k]
    }
    /// Singular values in descending order.
    pub fn sigma(&self, k: usize) -> &[f64] {
        &self.sigma[k]
    }

    /// Writes the taps as CSV with a `# swan-channel` header line.
    pub fn write_taps<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
        writeln!(
            w,
            "# swan-channel n_tx={} n_rx={} n_p={} n_c={} seed={}",
            self.n_tx,
            self.n_rx,
            self.n_paths(),
            self.n_c,
            seed
        )?;
        writeln!(w, "rx,tx,path,re,im")?;
        for rx in 0..self.n_rx {
            for tx in 0..self.n_tx {
                for (p, g) in self.taps[rx * self.n_tx + tx].iter().enumerate() {
                    writeln!(w, "{rx},{tx},{p},{},{}", g.re, g.im)?;
                }
            }
        }
        Ok(())
    }

    /// Rebuilds a realization from [`write_taps`](Self::write_taps) output.
    pub fn read_taps<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let bad = |msg: String| Error::invalid(format!("channel dump: {msg}"));
        let header = lines
            .next()
            .ok_or_else(|| bad("empty input".into()))?
            .map_err(|e| bad(e.to_string()))?;
        let rest = header
            .strip_prefix("# swan-channel")
            .ok_or_else(|| bad("missing header".into()))?;
        let mut fields = std::collections::HashMap::new();
        for kv in rest.split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(format!("bad header field {kv}")))?;
            fields.insert(k.to_string(), v.to_string());
        }
        let num = |k: &str| -> Result<usize> {
            fields
                .get(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("header needs {k}")))
        };
        let (n_tx, n_rx, n_p, n_c) = (num("n_tx")?, num("n_rx")?, num("n_p")?, num("n_c")?);
        let seed = fields.get("seed").and_then(|s| s.parse::<u64>().ok());
        let mut taps = vec![vec![Complex64::new(0.0, 0.0); n_p]; n_tx * n_rx];
        for (lineno, line) in lines.enumerate().skip(1) {
            let line = line.map_err(|e| bad(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(bad(format!("line {}: expected 5 columns", lineno + 2)));
            }
            let idx = |i: usize| cols[i].trim().parse::<usize>().map_err(|e| bad(e.to_string()));
            let val = |i: usize| cols[i].trim().parse::<f64>().map_err(|e| bad(e.to_string()));
            let (rx, tx, p) = (idx(0)?, idx(1)?, idx(2)?);
            if rx >= n_rx || tx >= n_tx || p >= n_p {
                return Err(bad(format!("line {}: index out of range", lineno + 2)));
            }
            taps[rx * n_tx + tx][p] = Complex64::new(val(3)?, val(4)?);
        }
        let mut ch = Self::from_taps(n_tx, n_rx, n_c, taps)?;
        ch.seed = seed;
        Ok(ch)
    }
}

/// Applies `V_k` to the stacked per-antenna symbols on each subcarrier.
///
/// `symbols[i][k]` is the symbol of stream `i` on subcarrier `k`; the output
/// uses the same layout for transmit antennas.
pub fn svd_precode(symbols: &[Vec<Complex64>], ch: &ChannelRealization) -> Result<Vec<Vec<Complex64>>> {
    if symbols.len() != ch.n_tx() {
        return Err(Error::SizeMismatch {
            expected: ch.n_tx(),
            actual: symbols.len(),
        });
    }
    if let Some(bad) = symbols.iter().find(|s| s.len() != ch.n_c()) {
        return Err(Error::SizeMismatch {
            expected: ch.n_c(),
            actual: bad.len(),
        });
    }
    let n_tx = ch.n_tx();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); ch.n_c()]; n_tx];
    for k in 0..ch.n_c() {
        let v = ch.v(k);
        for i in 0..n_tx {
            out[i][k] = (0..n_tx).map(|j| v[(i, j)] * symbols[j][k]).sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frob(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn factors_are_consistent() {
        let prof = MultipathProfile::uniform(16).unwrap();
        for (n_tx, n_rx) in [(1, 1), (2, 2), (4, 4), (3, 2), (2, 3)] {
            let ch = generate_channel(&prof, n_tx, n_rx, 32, 7).unwrap();
            for k in 0..32 {
                let v = ch.v(k);
                let eye = DMatrix::<Complex64>::identity(n_tx, n_tx);
                assert!(frob(&(v.adjoint() * v - eye)) < 1e-9);
                let s = ch.sigma(k);
                assert!(s.windows(2).all(|w| w[0] >= w[1]));
                let r = s.len();
                let sig = DMatrix::from_fn(r, r, |i, j| {
                    Complex64::new(if i == j { s[i] } else { 0.0 }, 0.0)
                });
                let v_r = v.columns(0, r).into_owned();
                let rebuilt = ch.u(k) * sig * v_r.adjoint();
                assert!(frob(&(rebuilt - ch.h(k))) < 1e-8);
                for j in 0..n_tx {
                    let first = v.column(j).iter().copied().find(|z| z.norm() > 1e-12).unwrap();
                    assert!(first.im.abs() < 1e-12 && first.re > 0.0);
                }
            }
        }
    }

    #[test]
    fn single_tap_is_flat() {
        let prof = MultipathProfile::uniform(1).unwrap();
        let ch = generate_channel(&prof, 2, 2, 16, 3).unwrap();
        for k in 1..16 {
            for rx in 0..2 {
                for tx in 0..2 {
                    assert!((ch.h(k)[(rx, tx)].norm() - ch.h(0)[(rx, tx)].norm()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let prof = MultipathProfile::uniform(4).unwrap();
        let a = generate_channel(&prof, 2, 2, 8, 99).unwrap();
        let b = generate_channel(&prof, 2, 2, 8, 99).unwrap();
        assert_eq!(a.taps(), b.taps());
        let c = generate_channel(&prof, 2, 2, 8, 100).unwrap();
        assert_ne!(a.taps(), c.taps());
    }

    #[test]
    fn too_many_paths() {
        let prof = MultipathProfile::uniform(16).unwrap();
        assert!(generate_channel(&prof, 1, 1, 8, 0).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(MultipathProfile::new(vec![0.5, 0.4]).is_err());
        assert!(MultipathProfile::new(vec![1.0, 0.0]).is_err());
        let e = MultipathProfile::exponential(8, 0.3).unwrap();
        assert!((e.variances().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_precoder_passes_symbols() {
        let ch = ChannelRealization::identity(3, 8).unwrap();
        let syms: Vec<Vec<Complex64>> = (0..3)
            .map(|i| (0..8).map(|k| Complex64::new(i as f64, k as f64)).collect())
            .collect();
        let out = svd_precode(&syms, &ch).unwrap();
        assert_eq!(out, syms);
    }

    #[test]
    fn precoding_rejects_mismatch() {
        let ch = ChannelRealization::identity(2, 8).unwrap();
        assert!(svd_precode(&[vec![Complex64::new(0.0, 0.0); 8]], &ch).is_err());
        assert!(svd_precode(&vec![vec![Complex64::new(0.0, 0.0); 7]; 2], &ch).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let prof = MultipathProfile::uniform(3).unwrap();
        let ch = generate_channel(&prof, 2, 3, 8, 5).unwrap();
        let mut buf = Vec::new();
        ch.write_taps(&mut buf).unwrap();
        let back = ChannelRealization::read_taps(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(back.taps(), ch.taps());
        assert_eq!(back.seed(), Some(5));
        assert!(ChannelRealization::read_taps(std::io::Cursor::new("rx,tx\n")).is_err());
    }
}
