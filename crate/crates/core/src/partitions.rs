//! Integer partitions indexing the Hilbert–Chow strata of `A^(n+1)`.
//!
//! A [`Partition`] is stored as a multiplicity vector: entry `i - 1` holds
//! the number of parts equal to `i`. Part-lists are accepted by the
//! constructors and normalized to that form.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions of {0} are not defined (total must be at least 1)")]
    EmptyTotal(u32),
    #[error("part sizes must be positive")]
    ZeroPart,
    #[error("multiplicities sum to {found} but the partition total is {expected}")]
    TotalMismatch { expected: u32, found: u64 },
    #[error("{0} has no prime divisor (expected an integer >= 2)")]
    NoPrimeDivisor(u64),
}

/// A partition of `total` in multiplicity form, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    multiplicities: Vec<u32>,
    total: u32,
}

impl Partition {
    /// Builds a partition from a list of part sizes in any order.
    pub fn from_parts(parts: &[u32]) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        let largest = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut multiplicities = vec![0u32; largest];
        for &p in parts {
            multiplicities[p as usize - 1] += 1;
        }
        let total: u64 = parts.iter().map(|&p| p as u64).sum();
        if total == 0 {
            return Err(PartitionError::EmptyTotal(0));
        }
        Ok(Self {
            multiplicities,
            total: total as u32,
        })
    }

    /// Builds a partition from `(ν₁, ν₂, …)` and checks `Σ i·ν_i = total`.
    pub fn from_multiplicities(multiplicities: &[u32], total: u32) -> Result<Self, PartitionError> {
        if total == 0 {
            return Err(PartitionError::EmptyTotal(0));
        }
        let found: u64 = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum();
        if found != total as u64 {
            return Err(PartitionError::TotalMismatch {
                expected: total,
                found,
            });
        }
        let mut multiplicities = multiplicities.to_vec();
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Ok(Self {
            multiplicities,
            total,
        })
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    /// `ν_i` for `i >= 1`; zero beyond the largest part.
    pub fn multiplicity(&self, part: u32) -> u32 {
        if part == 0 {
            return 0;
        }
        self.multiplicities
            .get(part as usize - 1)
            .copied()
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Part sizes in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &m) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        out
    }

    /// `|ν|`, the number of parts.
    pub fn weight(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `d(ν)`, the gcd of the part sizes.
    pub fn gcd(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .fold(0u32, |g, (i, _)| g.gcd(&(i as u32 + 1)))
    }

    /// `ν / d(ν)`: every part divided by the common gcd.
    pub fn reduced(&self) -> Partition {
        let d = self.gcd() as usize;
        let multiplicities: Vec<u32> = (1..=self.multiplicities.len() / d)
            .map(|i| self.multiplicities[i * d - 1])
            .collect();
        Partition {
            multiplicities,
            total: self.total / d as u32,
        }
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            weight: self.weight(),
            gcd: self.gcd(),
            reduced: self.reduced(),
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: u32,
    pub gcd: u32,
    pub reduced: Partition,
}

/// Iterates over the partitions of a fixed total in descending
/// lexicographic order of part-lists, starting from `[total]`.
///
/// The state is a part-list kept in non-increasing order; each step is
/// O(number of parts) and uses no recursion.
#[derive(Debug, Clone)]
pub struct Partitions {
    parts: Vec<u32>,
    total: u32,
    done: bool,
}

impl Partitions {
    pub fn new(total: u32) -> Result<Self, PartitionError> {
        if total == 0 {
            return Err(PartitionError::EmptyTotal(total));
        }
        Ok(Self {
            parts: vec![total],
            total,
            done: false,
        })
    }

    fn advance(&mut self) {
        // Strip trailing ones, decrement the last part > 1, then refill the
        // remainder greedily with copies of the new value.
        let mut ones = 0u32;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            ones += 1;
        }
        let Some(last) = self.parts.pop() else {
            self.done = true;
            return;
        };
        let value = last - 1;
        let mut remaining = ones + last;
        while remaining >= value {
            self.parts.push(value);
            remaining -= value;
        }
        if remaining > 0 {
            self.parts.push(remaining);
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_parts(&self.parts).expect("enumeration keeps parts positive");
        debug_assert_eq!(current.total, self.total);
        self.advance();
        Some(current)
    }
}

/// All partitions of `total`, in descending lexicographic order.
pub fn enumerate_partitions(total: u32) -> Result<Vec<Partition>, PartitionError> {
    Ok(Partitions::new(total)?.collect())
}

pub fn smallest_prime_divisor(m: u64) -> Result<u64, PartitionError> {
    if m < 2 {
        return Err(PartitionError::NoPrimeDivisor(m));
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            return Ok(p);
        }
        p += 1;
    }
    Ok(m)
}

pub fn is_prime(m: u64) -> bool {
    m >= 2 && smallest_prime_divisor(m) == Ok(m)
}

/// Outcome of checking that `|ν| > total/j` forces `d(ν) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallestFactorCheck {
    pub holds: bool,
    pub counterexample: Option<Partition>,
}

/// Brute-force check over all partitions of `total`: any partition with
/// more than `total / j` parts (`j` the smallest prime divisor of `total`)
/// has coprime parts.
pub fn verify_smallest_factor_lemma(total: u32) -> Result<SmallestFactorCheck, PartitionError> {
    let j = smallest_prime_divisor(total as u64)?;
    for nu in Partitions::new(total)? {
        // |ν| > total / j, compared without division
        if nu.weight() as u64 * j > total as u64 && nu.gcd() != 1 {
            return Ok(SmallestFactorCheck {
                holds: false,
                counterexample: Some(nu),
            });
        }
    }
    Ok(SmallestFactorCheck {
        holds: true,
        counterexample: None,
    })
}
