//! Pruned, zero-padded inverse FFT.
//!
//! The input is a block of `K` spectrum values placed at bins
//! `first, first + stride, ..., first + stride (K - 1)` of an `n`-point
//! transform, every other bin being zero. The transform is a radix-2
//! decimation-in-time recursion over the `K` nonzero inputs only, so no work
//! is spent on the padding. For contiguous blocks (`stride == 1`) the
//! modulation by the block's first bin and the `1/n` normalization are folded
//! into the last butterfly level.
//!
//! Operation counts for a contiguous block (`K >= 1`), charged to
//! [`Process::Ifft`]:
//!
//! * complex multiplications: `n/2 * log2(K) + n/2`
//! * complex additions: `n * log2(K)`
//!
//! Twiddle factors are table lookups and are not counted.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::opcount::{OpSink, Process};

fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|t| Complex64::from_polar(1.0, 2.0 * PI * t as f64 / n as f64))
        .collect()
}

/// `r[t] = sum_j bins[offset + j*step] * W^(s*j*t)` for `t` in `0..n/s`,
/// with `W = exp(+2*pi*i/n)`.
#[allow(clippy::too_many_arguments)]
fn periodic_sum<C: OpSink>(
    bins: &[Complex64],
    offset: usize,
    step: usize,
    count: usize,
    s: usize,
    n: usize,
    tw: &[Complex64],
    ops: &mut C,
) -> Vec<Complex64> {
    if count == 1 {
        return vec![bins[offset]; n / s];
    }
    let even = periodic_sum(bins, offset, 2 * step, count / 2, 2 * s, n, tw, ops);
    let odd = periodic_sum(bins, offset + step, 2 * step, count / 2, 2 * s, n, tw, ops);
    let half = n / (2 * s);
    let mut out = vec![Complex64::new(0.0, 0.0); n / s];
    for t in 0..half {
        let p = tw[s * t] * odd[t];
        out[t] = even[t] + p;
        out[t + half] = even[t] - p;
    }
    ops.complex_mul(Process::Ifft, half as u64);
    ops.complex_add(Process::Ifft, 2 * half as u64);
    out
}

/// Inverse DFT (with `1/n` scaling) of an `n`-point spectrum whose only
/// nonzero bins are `first + stride * j`, `j < bins.len()`.
pub fn zero_padded_ifft<C: OpSink>(
    bins: &[Complex64],
    first: usize,
    stride: usize,
    n: usize,
    ops: &mut C,
) -> Result<Vec<Complex64>> {
    let k = bins.len();
    if k == 0 || !k.is_power_of_two() {
        return Err(Error::invalid(format!(
            "block length {k} is not a nonzero power of two"
        )));
    }
    if !n.is_power_of_two() || stride == 0 || !stride.is_power_of_two() {
        return Err(Error::invalid(format!(
            "transform length {n} and stride {stride} must be powers of two"
        )));
    }
    if n % (stride * k) != 0 || first + stride * (k - 1) >= n {
        return Err(Error::invalid(format!(
            "block of {k} bins from {first} with stride {stride} does not fit {n} bins"
        )));
    }

    let tw = twiddles(n);
    let inv_n = 1.0 / n as f64;
    let first = first as u64;
    let nn = n as u64;
    let modulation = |t: usize, extra: u64| tw[(((first + extra) * t as u64) % nn) as usize] * inv_n;
    let mut out = vec![Complex64::new(0.0, 0.0); n];

    if n == 1 {
        out[0] = bins[0] * modulation(0, 0);
        ops.complex_mul(Process::Ifft, 1);
        return Ok(out);
    }

    if stride == 1 {
        let half = n / 2;
        let sign = if first % 2 == 0 { 1.0 } else { -1.0 };
        if k == 1 {
            for t in 0..half {
                let a = bins[0] * modulation(t, 0);
                out[t] = a;
                out[t + half] = a * sign;
            }
            ops.complex_mul(Process::Ifft, half as u64);
        } else {
            // The second half of the output reuses both products of the first.
            let even = periodic_sum(bins, 0, 2, k / 2, 2, n, &tw, ops);
            let odd = periodic_sum(bins, 1, 2, k / 2, 2, n, &tw, ops);
            for t in 0..half {
                let pa = modulation(t, 0) * even[t];
                let pb = modulation(t, 1) * odd[t];
                out[t] = pa + pb;
                out[t + half] = (pa - pb) * sign;
            }
            ops.complex_mul(Process::Ifft, n as u64);
            ops.complex_add(Process::Ifft, n as u64);
        }
        return Ok(out);
    }

    let period = periodic_sum(bins, 0, 1, k, stride, n, &tw, ops);
    let p = period.len();
    for (t, o) in out.iter_mut().enumerate() {
        *o = period[t % p] * modulation(t, 0);
    }
    ops.complex_mul(Process::Ifft, n as u64);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcount::{NoOps, OpCounter};

    fn naive(bins: &[Complex64], first: usize, stride: usize, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|t| {
                bins.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (j, b)| {
                    let k = (first + stride * j) as f64;
                    acc + b * Complex64::from_polar(1.0, 2.0 * PI * k * t as f64 / n as f64)
                }) / n as f64
            })
            .collect()
    }

    fn sample(k: usize) -> Vec<Complex64> {
        (0..k)
            .map(|j| Complex64::new((j as f64 * 0.37).sin() + 0.1, (j as f64 * 1.3).cos()))
            .collect()
    }

    #[test]
    fn matches_direct_sum() {
        for &(k, first, stride, n) in &[
            (1, 0, 1, 8),
            (1, 3, 1, 8),
            (2, 1, 1, 8),
            (4, 4, 1, 16),
            (8, 0, 1, 32),
            (16, 16, 1, 64),
            (4, 1, 4, 32),
            (8, 3, 2, 64),
        ] {
            let bins = sample(k);
            let fast = zero_padded_ifft(&bins, first, stride, n, &mut NoOps).unwrap();
            let slow = naive(&bins, first, stride, n);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-12, "k={k} first={first} stride={stride}");
            }
        }
    }

    #[test]
    fn contiguous_counts_follow_closed_form() {
        for &(k, first, n) in &[(1usize, 5usize, 16usize), (2, 0, 16), (8, 8, 64), (64, 64, 256)] {
            let mut ops = OpCounter::new();
            zero_padded_ifft(&sample(k), first, 1, n, &mut ops).unwrap();
            let log_k = k.trailing_zeros() as u64;
            let c = ops.get(Process::Ifft);
            assert_eq!(c.complex_mults, (n as u64 / 2) * log_k + n as u64 / 2);
            assert_eq!(c.complex_adds, n as u64 * log_k);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(zero_padded_ifft(&sample(3), 0, 1, 8, &mut NoOps).is_err());
        assert!(zero_padded_ifft(&sample(4), 6, 1, 8, &mut NoOps).is_err());
        assert!(zero_padded_ifft(&sample(4), 0, 1, 12, &mut NoOps).is_err());
    }
}
