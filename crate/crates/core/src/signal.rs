//! Complex-baseband primitives: oversampled IFFT, cyclic shifts, phase ramps
//! and PAPR measurement.

use std::f64::consts::PI;
use std::ops::Deref;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::zero_padded_ifft;
use crate::opcount::NoOps;

/// Non-empty buffer of finite complex samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::invalid("complex vector must not be empty"));
        }
        if let Some(i) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::invalid(format!("sample {i} is not finite")));
        }
        Ok(Self(data))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Wraps data already known to satisfy the invariants.
    pub(crate) fn from_vec_unchecked(data: Vec<Complex64>) -> Self {
        debug_assert!(!data.is_empty());
        Self(data)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    /// Mean of `|x[k]|^2`.
    pub fn mean_power(&self) -> f64 {
        mean_power(&self.0)
    }
}

impl Deref for ComplexVector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl AsRef<[Complex64]> for ComplexVector {
    fn as_ref(&self) -> &[Complex64] {
        &self.0
    }
}

pub fn mean_power(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>() / x.len() as f64
}

/// Zero-pads `spectrum` to `n_c * l` bins (data in bins `0..n_c`, zeros
/// after) and applies the inverse DFT with `1/(n_c l)` scaling.
///
/// `n_c` and `l` must be powers of two.
pub fn oversampled_ifft(spectrum: &[Complex64], l: usize) -> Result<ComplexVector> {
    let n_c = spectrum.len();
    if n_c == 0 || !n_c.is_power_of_two() {
        return Err(Error::SizeMismatch {
            expected: n_c.next_power_of_two().max(1),
            actual: n_c,
        });
    }
    if l == 0 || !l.is_power_of_two() {
        return Err(Error::invalid(format!("oversampling factor {l} is not a power of two")));
    }
    let out = zero_padded_ifft(spectrum, 0, 1, n_c * l, &mut NoOps)?;
    Ok(ComplexVector::from_vec_unchecked(out))
}

/// `out[k] = x[(k + delta) mod len]`.
pub fn cyclic_shift(x: &[Complex64], delta: i64) -> ComplexVector {
    let len = x.len();
    let d = delta.rem_euclid(len as i64) as usize;
    let mut out = Vec::with_capacity(len);
    out.extend_from_slice(&x[d..]);
    out.extend_from_slice(&x[..d]);
    ComplexVector::from_vec_unchecked(out)
}

/// Multiplies bin `k` by `exp(j 2 pi k delta / transform_len)`.
///
/// With `transform_len` equal to the IFFT length, this is the frequency-domain
/// image of [`cyclic_shift`] by `delta` samples.
pub fn apply_phase_ramp(spectrum: &[Complex64], delta: i64, transform_len: usize) -> ComplexVector {
    let tl = transform_len as i64;
    let out = spectrum
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let e = ((k as i64 % tl) * delta.rem_euclid(tl)).rem_euclid(tl);
            s * Complex64::from_polar(1.0, 2.0 * PI * e as f64 / transform_len as f64)
        })
        .collect();
    ComplexVector::from_vec_unchecked(out)
}

/// `max |x|^2 / mean |x|^2` over the discrete samples.
pub fn papr_linear(x: &[Complex64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::SizeMismatch { expected: 1, actual: 0 });
    }
    let mut peak = 0.0f64;
    let mut total = 0.0f64;
    for z in x {
        let p = z.norm_sqr();
        total += p;
        if p > peak {
            peak = p;
        }
    }
    if total <= 0.0 {
        return Err(Error::ZeroSignal);
    }
    Ok(peak / (total / x.len() as f64))
}

pub fn papr_db(x: &[Complex64]) -> Result<f64> {
    papr_linear(x).map(to_db)
}

pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&r| c(r, 0.0)).collect()
    }

    #[test]
    fn rejects_empty_and_nonfinite() {
        assert!(ComplexVector::new(vec![]).is_err());
        assert!(ComplexVector::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexVector::new(vec![c(1.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn ifft_dc_bin_is_constant() {
        let x = oversampled_ifft(&real(&[1.0, 0.0, 0.0, 0.0]), 1).unwrap();
        for z in x.iter() {
            assert!((z - c(0.25, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ifft_flat_spectrum_is_impulse() {
        let x = oversampled_ifft(&real(&[1.0; 4]), 1).unwrap();
        let expect = [1.0, 0.0, 0.0, 0.0];
        for (z, e) in x.iter().zip(expect) {
            assert!((z - c(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ifft_single_bin_has_constant_modulus() {
        for l in [1, 2, 4] {
            for k in 0..8 {
                let mut s = vec![c(0.0, 0.0); 8];
                s[k] = c(1.0, 0.0);
                let x = oversampled_ifft(&s, l).unwrap();
                let m = 1.0 / (8 * l) as f64;
                assert!(x.iter().all(|z| (z.norm() - m).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn ifft_rejects_bad_sizes() {
        assert!(oversampled_ifft(&real(&[1.0, 2.0, 3.0]), 1).is_err());
        assert!(oversampled_ifft(&real(&[1.0; 4]), 3).is_err());
    }

    #[test]
    fn shift_examples() {
        let x = real(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(cyclic_shift(&x, 0).as_slice(), &x[..]);
        assert_eq!(cyclic_shift(&x, 1).as_slice(), &real(&[2.0, 3.0, 4.0, 1.0])[..]);
        assert_eq!(cyclic_shift(&x, -3).as_slice(), &real(&[2.0, 3.0, 4.0, 1.0])[..]);
    }

    #[test]
    fn papr_examples() {
        assert!((papr_linear(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]).unwrap() - 1.0).abs() < 1e-15);
        let p = papr_linear(&real(&[2.0, 0.0, 0.0, 0.0])).unwrap();
        assert!((p - 4.0).abs() < 1e-15);
        assert!((to_db(p) - 6.0206).abs() < 1e-4);
        assert_eq!(papr_linear(&real(&[0.0; 4])), Err(Error::ZeroSignal));
    }

    #[test]
    fn phase_ramp_examples() {
        let s: Vec<Complex64> = (0..8).map(|k| c(k as f64 + 1.0, 0.5)).collect();
        assert_eq!(apply_phase_ramp(&s, 0, 32).as_slice(), &s[..]);
        let half = apply_phase_ramp(&s, 16, 32);
        assert!((half[1] + s[1]).norm() < 1e-12);
        let any = apply_phase_ramp(&s, 7, 32);
        for (a, b) in any.iter().zip(&s) {
            assert!((a.norm() - b.norm()).abs() < 1e-12);
        }
    }
}
