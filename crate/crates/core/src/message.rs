//! Branch messages: the tensor a contracted subtree hands to its parent.
//!
//! A message at depth `p` holds `4^p` complex entries indexed by the parent's
//! trajectory bits. The ket-side bit for cost layer `t` (1-based) sits at bit
//! position `t - 1` of the index and the bra-side bit at position `p + t - 1`,
//! so `index = ket | (bra << p)`.
//!
//! Binary dump layout (all little-endian): `p: u32`, `d: u32`, `count: u64`,
//! then `count` pairs of `f64` (real, imaginary).

use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Arrays at least this long are swept in parallel.
pub(crate) const PAR_THRESHOLD: usize = 1 << 14;

/// Largest depth whose message length fits in memory-addressable sizes at all.
const MAX_REPRESENTABLE_DEPTH: usize = 28;

#[derive(Debug, Clone, PartialEq)]
pub struct BranchMessage {
    p: usize,
    entries: Vec<Complex64>,
}

/// Number of entries in a depth-`p` message.
pub fn message_len(p: usize) -> usize {
    1usize << (2 * p)
}

/// The all-ones message, the leaf-level identity of the recursion.
pub fn unit_message(p: usize) -> Result<BranchMessage> {
    check_depth(p)?;
    Ok(BranchMessage {
        p,
        entries: vec![Complex64::new(1.0, 0.0); message_len(p)],
    })
}

/// Raises every entry to the `k`-th power (complex power, not modulus).
pub fn entrywise_power(msg: &BranchMessage, k: u32) -> Result<BranchMessage> {
    let mut out = msg.clone();
    out.power_in_place(k)?;
    Ok(out)
}

fn check_depth(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter("depth p must be at least 1".into()));
    }
    if p > MAX_REPRESENTABLE_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "depth {p} exceeds the largest representable message depth {MAX_REPRESENTABLE_DEPTH}"
        )));
    }
    Ok(())
}

impl BranchMessage {
    /// Wraps raw entries; the length must be exactly `4^p` and all entries finite.
    pub fn from_entries(p: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_depth(p)?;
        if entries.len() != message_len(p) {
            return Err(Error::InvalidParameter(format!(
                "depth {p} message needs {} entries, got {}",
                message_len(p),
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::Numeric(format!("message entry {i} is not finite")));
        }
        Ok(BranchMessage { p, entries })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Entry at the given ket and bra trajectories (bit `t - 1` is layer `t`).
    pub fn get(&self, ket: usize, bra: usize) -> Complex64 {
        self.entries[ket | (bra << self.p)]
    }

    pub fn power_in_place(&mut self, k: u32) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidParameter("power k must be at least 1".into()));
        }
        if k == 1 {
            return Ok(());
        }
        if self.entries.len() >= PAR_THRESHOLD {
            self.entries.par_iter_mut().for_each(|z| *z = z.powu(k));
        } else {
            self.entries.iter_mut().for_each(|z| *z = z.powu(k));
        }
        Ok(())
    }

    /// Maximum absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &BranchMessage) -> f64 {
        assert_eq!(self.p, other.p, "message depth mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn write_to<W: Write>(&self, d: usize, mut w: W) -> Result<()> {
        w.write_all(&(self.p as u32).to_le_bytes())?;
        w.write_all(&(d as u32).to_le_bytes())?;
        w.write_all(&(self.entries.len() as u64).to_le_bytes())?;
        for z in &self.entries {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a dump written by [`BranchMessage::write_to`], returning the message and `d`.
    pub fn read_from<R: Read>(mut r: R) -> Result<(Self, usize)> {
        let mut u32buf = [0u8; 4];
        let mut u64buf = [0u8; 8];
        r.read_exact(&mut u32buf)?;
        let p = u32::from_le_bytes(u32buf) as usize;
        r.read_exact(&mut u32buf)?;
        let d = u32::from_le_bytes(u32buf) as usize;
        r.read_exact(&mut u64buf)?;
        let count = u64::from_le_bytes(u64buf);
        check_depth(p)?;
        if count != message_len(p) as u64 {
            return Err(Error::InvalidInput(format!(
                "dump header says {count} entries but depth {p} needs {}",
                message_len(p)
            )));
        }
        let mut entries = Vec::with_capacity(count as usize);
        for _ in 0..count {
            r.read_exact(&mut u64buf)?;
            let re = f64::from_le_bytes(u64buf);
            r.read_exact(&mut u64buf)?;
            let im = f64::from_le_bytes(u64buf);
            entries.push(Complex64::new(re, im));
        }
        Ok((BranchMessage::from_entries(p, entries)?, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_message_is_all_ones() {
        for p in 1..=3 {
            let m = unit_message(p).unwrap();
            assert_eq!(m.len(), 4usize.pow(p as u32));
            assert!(m.entries().iter().all(|z| *z == Complex64::new(1.0, 0.0)));
        }
        assert!(matches!(unit_message(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn power_of_unit_is_unit() {
        let u = unit_message(3).unwrap();
        for k in 1..6 {
            assert_eq!(entrywise_power(&u, k).unwrap(), u);
        }
    }

    #[test]
    fn power_examples() {
        let m = BranchMessage::from_entries(1, vec![Complex64::new(2.0, 0.0); 4]).unwrap();
        assert_eq!(entrywise_power(&m, 1).unwrap(), m);
        let sq = entrywise_power(&m, 2).unwrap();
        assert!(sq.entries().iter().all(|z| *z == Complex64::new(4.0, 0.0)));

        let m = BranchMessage::from_entries(1, vec![Complex64::new(1.0, 1.0); 4]).unwrap();
        let sq = entrywise_power(&m, 2).unwrap();
        assert!(sq.entries().iter().all(|z| *z == Complex64::new(0.0, 2.0)));

        assert!(matches!(entrywise_power(&m, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn rejects_wrong_length_and_nan() {
        assert!(BranchMessage::from_entries(1, vec![Complex64::default(); 3]).is_err());
        let mut e = vec![Complex64::default(); 4];
        e[2].re = f64::NAN;
        assert!(matches!(
            BranchMessage::from_entries(1, e),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn dump_layout() {
        let entries: Vec<_> = (0..16).map(|i| Complex64::new(i as f64, -(i as f64))).collect();
        let m = BranchMessage::from_entries(2, entries).unwrap();
        let mut buf = Vec::new();
        m.write_to(3, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 + 16 * 16);
        assert_eq!(&buf[0..4], &2u32.to_le_bytes());
        assert_eq!(&buf[4..8], &3u32.to_le_bytes());
        assert_eq!(&buf[8..16], &16u64.to_le_bytes());
        assert_eq!(&buf[16 + 16 * 5..16 + 16 * 5 + 8], &5.0f64.to_le_bytes());
        let (back, d) = BranchMessage::read_from(&buf[..]).unwrap();
        assert_eq!(d, 3);
        assert_eq!(back, m);
        assert!(BranchMessage::read_from(&buf[..20]).is_err());
    }
}
