use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::factorial;

/// An integer partition `λ1 ≥ λ2 ≥ … ≥ λl > 0`.
///
/// The derived `Ord` is lexicographic on the parts, so `(3,1) > (2,2) > (2,1,1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the parts into non-increasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn single(part: u32) -> Self {
        Self::new(vec![part]).expect("positive part")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Part value to multiplicity, for parts that occur.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `Π_i m_i(λ)!`
    pub fn multiplicity_factorials(&self) -> BigInt {
        self.multiplicities()
            .values()
            .fold(BigInt::one(), |acc, &m| acc * factorial(m))
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// The partition whose parts are the union of both multisets.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn conjugate(&self) -> Self {
        let top = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=top)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Self { parts }
    }

    /// Dominance order `self ≤ other` for partitions of equal weight.
    pub fn dominated_by(&self, other: &Self) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first and `(1^n)` last.
pub fn partitions(n: u32) -> Vec<IntegerPartition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of every weight in `lo..=hi`, by weight and then in reverse lexicographic order.
pub fn partitions_in_range(lo: u32, hi: u32) -> Vec<IntegerPartition> {
    (lo..=hi).flat_map(partitions).collect()
}

impl fmt::Display for IntegerPartition {
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

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `3,1`, `(3,1)`, `1,3` (sorted on the way in) and `()` or the empty string.
impl FromStr for IntegerPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("malformed partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts).map_err(|_| Error::Parse(format!("malformed partition {s:?}")))
    }
}

impl Serialize for IntegerPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntegerPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
