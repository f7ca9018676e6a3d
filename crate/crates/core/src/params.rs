use crate::error::{Error, Result};

/// OFDM and CS-PTS grid dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OfdmParams {
    /// Subcarriers (power of two).
    pub n_c: usize,
    /// Oversampling factor (power of two).
    pub l: usize,
    /// Partitions `M`; divides `n_c`.
    pub m_partitions: usize,
    /// Admissible phase rotations `U` (power of two).
    pub u_phases: usize,
    /// Admissible cyclic shifts `D` (power of two, divides `n_c`).
    pub d_shifts: usize,
}

impl OfdmParams {
    pub fn new(n_c: usize, l: usize, m_partitions: usize, u_phases: usize, d_shifts: usize) -> Result<Self> {
        let p = Self {
            n_c,
            l,
            m_partitions,
            u_phases,
            d_shifts,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pow2 = |v: usize, name: &str| {
            if v == 0 || !v.is_power_of_two() {
                Err(Error::invalid(format!("{name} = {v} must be a power of two")))
            } else {
                Ok(())
            }
        };
        pow2(self.n_c, "n_c")?;
        pow2(self.l, "l")?;
        pow2(self.u_phases, "u_phases")?;
        pow2(self.d_shifts, "d_shifts")?;
        if self.m_partitions == 0 || self.n_c % self.m_partitions != 0 {
            return Err(Error::invalid(format!(
                "m_partitions = {} must divide n_c = {}",
                self.m_partitions, self.n_c
            )));
        }
        if self.n_c % self.d_shifts != 0 {
            return Err(Error::invalid(format!(
                "d_shifts = {} must divide n_c = {}",
                self.d_shifts, self.n_c
            )));
        }
        Ok(())
    }

    /// `n_c * l`.
    pub fn oversampled_len(&self) -> usize {
        self.n_c * self.l
    }

    /// Spacing between admissible shifts, `n_c / D` samples.
    pub fn shift_step(&self) -> usize {
        self.n_c / self.d_shifts
    }

    pub fn block_len(&self) -> usize {
        self.n_c / self.m_partitions
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(OfdmParams::new(256, 4, 4, 4, 8).is_ok());
        assert!(OfdmParams::new(256, 4, 3, 4, 8).is_err());
        assert!(OfdmParams::new(256, 4, 4, 3, 8).is_err());
        assert!(OfdmParams::new(8, 1, 2, 2, 16).is_err());
        assert!(OfdmParams::new(100, 4, 4, 4, 4).is_err());
        let p = OfdmParams::new(256, 4, 4, 4, 8).unwrap();
        assert_eq!(p.shift_step(), 32);
        assert_eq!(p.oversampled_len(), 1024);
    }
}
