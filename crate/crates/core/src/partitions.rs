//! Integer partitions and the small number-theoretic helpers built on them.
//!
//! Partitions are always stored in canonical form (weakly decreasing positive
//! parts), and enumeration is in descending lexicographic order: `(n)` first,
//! `(1, ..., 1)` last. Every matrix row order and certificate coordinate in the
//! crate follows this order.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    #[serde(skip)]
    n: usize,
}

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing and
    /// positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive, got {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the parts into canonical order. Zero parts are still rejected.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            n: 0,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Iterator over the partitions of `n` in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions {
            current: Some(first),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted(cur.clone());

        // Successor: decrement the rightmost part larger than 1 and refill the
        // tail greedily with parts no larger than the decremented value.
        let mut parts = cur;
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let k = last - 1;
            let mut rest = ones + 1;
            parts.push(k);
            while rest >= k {
                parts.push(k);
                rest -= k;
            }
            if rest > 0 {
                parts.push(rest);
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// All partitions of `n`, `(n)` first and `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    Partitions::new(n).collect()
}

/// `P(n)` via Euler's pentagonal number recurrence.
pub fn count_partitions(n: usize) -> BigUint {
    partition_counts(n).pop().expect("table has n + 1 entries")
}

/// `P(0), ..., P(n_max)`.
pub fn partition_counts(n_max: usize) -> Vec<BigUint> {
    let mut table: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    table.push(BigInt::from(1));
    for i in 1..=n_max {
        let mut sum = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        table.push(sum);
    }
    table
        .into_iter()
        .map(|v| {
            debug_assert!(!v.is_negative());
            v.magnitude().clone()
        })
        .collect()
}

/// Euler's totient by trial division.
pub fn euler_phi(j: u64) -> Result<u64> {
    if j == 0 {
        return Err(Error::InvalidArgument("euler_phi(0) is undefined".into()));
    }
    let mut rest = j;
    let mut phi = j;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    Ok(phi)
}

/// `d(λ) = Σ C(λ_i, 2)`, the order of vanishing of the principal
/// specialization of `e_λ`.
pub fn d_statistic(lambda: &Partition) -> u64 {
    lambda
        .parts()
        .iter()
        .map(|&p| (p as u64) * (p as u64).saturating_sub(1) / 2)
        .sum()
}

/// Transpose of the Young diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = lambda.parts();
    let width = parts.first().copied().unwrap_or(0);
    let conj = (1..=width)
        .map(|i| parts.iter().take_while(|&&p| p >= i).count())
        .collect();
    Partition::from_sorted(conj)
}
