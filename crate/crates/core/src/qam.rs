//! Gray-coded square QAM.
//!
//! A symbol label of `b = log2(order)` bits is read most-significant bit
//! first. The first `b/2` bits select the in-phase level and the last `b/2`
//! bits the quadrature level. Each half is Gray-decoded to an index `i` and
//! mapped to the amplitude `sqrt(order) - 1 - 2i`, so the all-zero half maps
//! to the largest positive level. For 16-QAM one axis reads
//!
//! | bits | 00 | 01 | 11 | 10 |
//! |------|----|----|----|----|
//! | level| +3 | +1 | -1 | -3 |
//!
//! Points are scaled to unit mean energy.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::ComplexVector;

#[derive(Debug, Clone, PartialEq)]
pub struct QamConstellation {
    order: usize,
    bits_per_symbol: usize,
    points: Vec<Complex64>,
}

fn gray_decode(mut g: usize) -> usize {
    let mut b = g;
    while g > 1 {
        g >>= 1;
        b ^= g;
    }
    b
}

impl QamConstellation {
    pub fn new(order: usize) -> Result<Self> {
        if !matches!(order, 4 | 16 | 64) {
            return Err(Error::invalid(format!("unsupported QAM order {order}")));
        }
        let bits = order.trailing_zeros() as usize;
        let half = bits / 2;
        let levels = 1usize << half;
        let scale = (2.0 * (order as f64 - 1.0) / 3.0).sqrt().recip();
        let amplitude = |g: usize| (levels as f64 - 1.0 - 2.0 * gray_decode(g) as f64) * scale;
        let points = (0..order)
            .map(|label| {
                let i_bits = label >> half;
                let q_bits = label & (levels - 1);
                Complex64::new(amplitude(i_bits), amplitude(q_bits))
            })
            .collect();
        Ok(Self {
            order,
            bits_per_symbol: bits,
            points,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.bits_per_symbol
    }

    /// Points indexed by their bit label.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, label: usize) -> Complex64 {
        self.points[label]
    }
}

/// Maps a bit sequence (values 0 or 1) to constellation points, one per
/// `log2(order)` bits.
pub fn map_symbols(bits: &[u8], constellation: &QamConstellation) -> Result<ComplexVector> {
    let b = constellation.bits_per_symbol();
    if bits.is_empty() || bits.len() % b != 0 {
        return Err(Error::SizeMismatch {
            expected: (bits.len() / b).max(1) * b,
            actual: bits.len(),
        });
    }
    if bits.iter().any(|&x| x > 1) {
        return Err(Error::invalid("bits must be 0 or 1"));
    }
    let symbols = bits
        .chunks_exact(b)
        .map(|group| {
            let label = group.iter().fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
            constellation.point(label)
        })
        .collect();
    ComplexVector::new(symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn qpsk_table() {
        let q = QamConstellation::new(4).unwrap();
        let s = map_symbols(&[0, 0], &q).unwrap();
        assert!(s[0].re > 0.0 && s[0].im > 0.0);
        let all = map_symbols(&[0, 0, 0, 1, 1, 0, 1, 1], &q).unwrap();
        for i in 0..4 {
            for j in 0..i {
                assert!((all[i] - all[j]).norm() > 1e-6);
            }
        }
        assert!((all.mean_power() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_energy_and_distinct() {
        for order in [4, 16, 64] {
            let q = QamConstellation::new(order).unwrap();
            let e: f64 = q.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
            assert!((e - 1.0).abs() < 1e-12);
            for i in 0..order {
                for j in 0..i {
                    assert!((q.point(i) - q.point(j)).norm() > 1e-6);
                }
            }
        }
    }

    #[test]
    fn gray_neighbours_differ_by_one_bit() {
        let q = QamConstellation::new(16).unwrap();
        let d_min = 2.0 / 10f64.sqrt();
        for i in 0..16 {
            for j in 0..16 {
                if ((q.point(i) - q.point(j)).norm() - d_min).abs() < 1e-9 {
                    assert_eq!((i ^ j).count_ones(), 1);
                }
            }
        }
    }

    #[test]
    fn qam64_random_bits_mean_power() {
        let q = QamConstellation::new(64).unwrap();
        let mut rng = crate::rng::rng_from_seed(11);
        let bits: Vec<u8> = (0..6000).map(|_| rng.random_range(0..2u8)).collect();
        let s = map_symbols(&bits, &q).unwrap();
        assert_eq!(s.len(), 1000);
        assert!((s.mean_power() - 1.0).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_input() {
        let q = QamConstellation::new(16).unwrap();
        assert!(map_symbols(&[0, 1, 1], &q).is_err());
        assert!(map_symbols(&[0, 1, 2, 0], &q).is_err());
        assert!(QamConstellation::new(8).is_err());
    }
}
