//! Set partitions of `[n]`, enumerated as restricted growth strings.
//!
//! A restricted growth string `a` has `a[0] = 0` and `a[i] ≤ 1 + max(a[..i])`;
//! element `i + 1` lives in block `a[i]`. Lexicographic order on these strings
//! gives the enumeration order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::DEFAULT_SET_PARTITION_LIMIT;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    ground_size: usize,
    /// 1-based elements; each block sorted, blocks ordered by least element.
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    fn from_rgs(rgs: &[usize], num_blocks: usize) -> Self {
        let mut blocks = vec![Vec::new(); num_blocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self {
            ground_size: rgs.len(),
            blocks,
        }
    }

    /// Builds a partition from explicit blocks, validating disjointness and coverage.
    pub fn from_blocks(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > ground_size || seen[e - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} is out of range or repeated"
                    )));
                }
                seen[e - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument("blocks do not cover [n]".into()));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn length(&self) -> usize {
        self.blocks.len()
    }

    /// `λ_{π_i} = Σ_{j ∈ π_i} λ_j` for every block.
    pub fn block_weights(&self, parts: &[u32]) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&j| parts[j - 1]).sum())
            .collect()
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Streams every partition of `[n]` exactly once.
pub struct SetPartitions {
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(rgs[..=i])`
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        Self {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        let blocks = self.prefix_max.last().map_or(0, |m| m + 1);
        Some(SetPartition::from_rgs(&self.rgs, blocks))
    }
}

pub fn set_partitions(n: usize) -> Result<SetPartitions> {
    set_partitions_with_limit(n, DEFAULT_SET_PARTITION_LIMIT)
}

/// `n = 0` yields the single empty partition.
pub fn set_partitions_with_limit(n: usize, limit: usize) -> Result<SetPartitions> {
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "set partition ground size",
            requested: n,
            limit,
        });
    }
    Ok(SetPartitions::new(n))
}

/// Values that can be summed and multiplied inside a set-partition sum.
pub trait BlockValue: Clone {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

/// Ground sizes up to this use direct enumeration; above it, a subset recursion.
const DIRECT_ENUMERATION_MAX: usize = 8;

/// `Σ_{π ∈ Π_l} Π_{B ∈ π} f(|B|, Σ_{j∈B} parts[j])` with `l = parts.len()`.
///
/// `f` is called once per distinct `(block size, block weight)` pair.
pub fn set_partition_sum<T, F>(parts: &[u32], limit: usize, mut f: F) -> Result<T>
where
    T: BlockValue,
    F: FnMut(usize, u32) -> Result<T>,
{
    let l = parts.len();
    if l > limit {
        return Err(Error::LimitExceeded {
            what: "set partition ground size",
            requested: l,
            limit,
        });
    }
    let mut memo: HashMap<(usize, u32), T> = HashMap::new();
    let mut factor = |size: usize, weight: u32| -> Result<T> {
        if let Some(v) = memo.get(&(size, weight)) {
            return Ok(v.clone());
        }
        let v = f(size, weight)?;
        memo.insert((size, weight), v.clone());
        Ok(v)
    };

    if l <= DIRECT_ENUMERATION_MAX {
        let mut total = T::zero_value();
        for pi in SetPartitions::new(l) {
            let mut term = T::one_value();
            for block in pi.blocks() {
                let w = block.iter().map(|&j| parts[j - 1]).sum();
                term = term.mul(&factor(block.len(), w)?);
            }
            total.add_assign(&term);
        }
        return Ok(total);
    }

    // g(S) = Σ_{B ⊆ S, min S ∈ B} f(B)·g(S \ B), over bitmasks of [l].
    let full = (1usize << l) - 1;
    let mut g: Vec<Option<T>> = vec![None; full + 1];
    g[0] = Some(T::one_value());
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut acc = T::zero_value();
        let mut sub = rest;
        loop {
            let block = sub | low;
            let size = block.count_ones() as usize;
            let weight = (0..l).filter(|j| block >> j & 1 == 1).map(|j| parts[j]).sum();
            if let Some(tail) = &g[s ^ block] {
                acc.add_assign(&factor(size, weight)?.mul(tail));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        g[s] = Some(acc);
    }
    Ok(g[full].take().expect("filled"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rational};

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..=10).map(|n| set_partitions(n).unwrap().count()).collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
    }

    #[test]
    fn one_element() {
        let all: Vec<_> = set_partitions(1).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks(), &[vec![1]]);
    }

    #[test]
    fn contains_the_three_block_example() {
        let target = SetPartition::from_blocks(6, vec![vec![1, 3, 6], vec![2], vec![4, 5]]).unwrap();
        assert_eq!(target.length(), 3);
        assert_eq!(set_partitions(6).unwrap().filter(|p| *p == target).count(), 1);
    }

    #[test]
    fn every_partition_is_valid_and_distinct() {
        let all: Vec<_> = set_partitions(6).unwrap().collect();
        let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for p in &all {
            let rebuilt = SetPartition::from_blocks(6, p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
            assert_eq!(p.blocks().iter().map(Vec::len).sum::<usize>(), 6);
        }
    }

    #[test]
    fn limit_guard() {
        assert!(matches!(
            set_partitions(13),
            Err(Error::LimitExceeded { requested: 13, .. })
        ));
        assert!(set_partitions_with_limit(13, 13).is_ok());
    }

    #[test]
    fn invalid_blocks_rejected() {
        assert!(SetPartition::from_blocks(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::from_blocks(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::from_blocks(2, vec![vec![1, 2], vec![]]).is_err());
    }

    #[test]
    fn subset_recursion_matches_direct_enumeration() {
        // weights chosen so that f depends nontrivially on both arguments
        let f = |size: usize, w: u32| -> Result<Rational> {
            Ok(int(2 * size as i64 - 1) * int(w as i64 + 1) / int(3))
        };
        for parts in [vec![3u32, 2, 2, 1, 1, 1, 1, 1, 1], vec![1; 10], vec![5, 4, 3, 3, 2, 2, 1, 1, 1]] {
            let fast: Rational = set_partition_sum(&parts, 12, f).unwrap();
            let mut slow = Rational::from_integer(0.into());
            for pi in set_partitions(parts.len()).unwrap() {
                let mut term = int(1);
                for (b, w) in pi.blocks().iter().zip(pi.block_weights(&parts)) {
                    term *= f(b.len(), w).unwrap();
                }
                slow += term;
            }
            assert_eq!(fast, slow);
        }
    }
}
