use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A non-increasing weight vector `k_1 >= ... >= k_m >= 0`, padded with
/// explicit trailing zeros to the matrix order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(alloc::format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Pad or trim trailing zeros to length `m`.
    pub fn with_len(parts: &[u32], m: usize) -> Result<Self> {
        if parts.len() > m && parts[m..].iter().any(|&p| p != 0) {
            return Err(Error::InvalidPartition(alloc::format!(
                "{parts:?} has more than {m} nonzero parts"
            )));
        }
        let mut v: Vec<u32> = parts.iter().copied().take(m).collect();
        v.resize(m, 0);
        Self::new(v)
    }

    pub fn zero(m: usize) -> Self {
        Partition {
            parts: alloc::vec![0; m],
        }
    }

    /// The rectangular partition `(p, ..., p)` of length `m`.
    pub fn rectangular(p: u32, m: usize) -> Self {
        Partition {
            parts: alloc::vec![p; m],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn last(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// `Some(p)` if every part equals `p`.
    pub fn rectangular_part(&self) -> Option<u32> {
        let p = self.first();
        self.parts.iter().all(|&q| q == p).then_some(p)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.parts.iter().map(|&p| p as f64).collect()
    }

    /// Part-wise sum; both partitions must have the same length.
    pub fn add(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Partition {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn add_scalar(&self, p: u32) -> Partition {
        Partition {
            parts: self.parts.iter().map(|a| a + p).collect(),
        }
    }

    /// Transposed Young diagram, `k'_j = #{i : k_i >= j}`.
    pub fn conjugate(&self) -> Vec<u32> {
        conjugate(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for Partition {
    type Err = Error;

    /// Comma-separated non-increasing integers, e.g. `2,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(alloc::format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub(crate) fn conjugate(parts: &[u32]) -> Vec<u32> {
    let first = parts.first().copied().unwrap_or(0) as usize;
    (1..=first as u32)
        .map(|j| parts.iter().filter(|&&p| p >= j).count() as u32)
        .collect()
}

/// All partitions of `k` with at most `max_len` nonzero parts, without
/// trailing zeros, in reverse-lexicographic order.
pub fn partitions_of(k: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(k, k, max_len, &mut current, &mut out);
    out
}

fn fill(rest: u32, cap: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=rest.min(cap)).rev() {
        current.push(p);
        fill(rest - p, p, slots - 1, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn enumerates_in_reverse_lex_order() {
        assert_eq!(
            partitions_of(4, 4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(partitions_of(0, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn parse_and_pad() {
        let k: Partition = "2,1".parse().unwrap();
        assert_eq!(Partition::with_len(k.parts(), 3).unwrap().parts(), &[2, 1, 0]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!(Partition::with_len(&[1, 1, 1], 2).is_err());
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }
}
