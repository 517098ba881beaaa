use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::rational::{factorial, Rational};
use crate::series::PowerSeries;

static STIRLING: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

/// Stirling number of the second kind, with `S(0,0) = 1`, `S(n,0) = 0` for `n > 0`
/// and `S(n,k) = 0` for `k > n`.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    if let Some(v) = STIRLING.read().unwrap().get(n) {
        return v[k].clone();
    }
    let mut table = STIRLING.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        let row = (0..=m)
            .map(|j| match (m, j) {
                (0, 0) => BigInt::one(),
                (_, 0) => BigInt::zero(),
                _ => {
                    let prev = &table[m - 1];
                    let same = prev.get(j).cloned().unwrap_or_default();
                    &prev[j - 1] + same * j
                }
            })
            .collect();
        table.push(row);
    }
    table[n][k].clone()
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Unsigned Bernoulli number `B_i > 0` (`B_1 = 1/6`, `B_2 = 1/30`, …), read off
/// `x/sinh(x) = 1 + Σ (-1)^i (2^{2i} - 2) B_i x^{2i} / (2i)!`.
pub fn bernoulli_unsigned(i: u32) -> Rational {
    assert!(i >= 1, "unsigned Bernoulli numbers start at index 1");
    let idx = i as usize - 1;
    if let Some(b) = BERNOULLI.read().unwrap().get(idx) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    if table.len() <= idx {
        let count = (2 * table.len()).max(i as usize).max(8);
        let series = PowerSeries::x_over_sinh(2 * count);
        *table = (1..=count as u32)
            .map(|j| {
                let c = series
                    .coefficient(2 * j as usize)
                    .expect("series built to this order")
                    .clone();
                let scale = Rational::from_integer(factorial(2 * j))
                    / Rational::from_integer((BigInt::one() << (2 * j)) - 2);
                let b = c * scale;
                if j % 2 == 1 {
                    -b
                } else {
                    b
                }
            })
            .collect();
    }
    table[idx].clone()
}

/// Number of ones in the binary expansion.
pub fn binary_weight(i: u64) -> u32 {
    i.count_ones()
}

/// A 2-adic valuation; zero has valuation `Infinite`, which orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

fn nu2_int(n: &BigInt) -> i64 {
    n.trailing_zeros().expect("nonzero") as i64
}

/// `ν₂(p/q) = ν₂(p) − ν₂(q)`, `ν₂(0) = ∞`.
pub fn nu2(q: &Rational) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(nu2_int(q.numer()) - nu2_int(q.denom()))
}

/// `ν₂(n!)` by Legendre's formula, `Σ_{j≥1} ⌊n/2^j⌋`.
pub fn nu2_factorial(n: u64) -> u64 {
    let mut total = 0;
    let mut p = 2;
    while p <= n {
        total += n / p;
        p *= 2;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(3, 5), BigInt::zero());
        assert_eq!(stirling2(5, 0), BigInt::zero());
        for n in 1..=15u32 {
            assert_eq!(stirling2(n, 1), BigInt::one());
            assert_eq!(stirling2(n, 2), (BigInt::one() << (n - 1)) - 1);
            assert_eq!(stirling2(n, n - 1), BigInt::from(n * (n - 1) / 2));
            assert_eq!(stirling2(n, n), BigInt::one());
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_unsigned(1), ratio(1, 6));
        assert_eq!(bernoulli_unsigned(2), ratio(1, 30));
        assert_eq!(bernoulli_unsigned(3), ratio(1, 42));
        assert_eq!(bernoulli_unsigned(4), ratio(1, 30));
        assert_eq!(bernoulli_unsigned(5), ratio(5, 66));
        assert_eq!(bernoulli_unsigned(6), ratio(691, 2730));
        assert_eq!(bernoulli_unsigned(20), bernoulli_unsigned(20));
        assert!(bernoulli_unsigned(20) > int(0));
    }

    #[test]
    fn bernoulli_denominators_have_one_factor_of_two() {
        for i in 1..=12 {
            let b = bernoulli_unsigned(i);
            assert_eq!(nu2(&Rational::from_integer(b.denom().clone())), Valuation::Finite(1));
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(nu2(&int(0)), Valuation::Infinite);
        assert_eq!(nu2(&ratio(14, 45)), Valuation::Finite(1));
        assert_eq!(nu2(&ratio(1, 6)), Valuation::Finite(-1));
        assert_eq!(nu2(&int(-48)), Valuation::Finite(4));
        assert!(Valuation::Infinite > Valuation::Finite(1000));
    }

    #[test]
    fn legendre() {
        assert_eq!(binary_weight(1), 1);
        assert_eq!(binary_weight(12), 2);
        assert_eq!(nu2_factorial(10) + binary_weight(10) as u64, 10);
        for i in 0..=30u32 {
            let direct = nu2(&Rational::from_integer(factorial(i))).finite().unwrap();
            assert_eq!(direct as u64, nu2_factorial(i as u64));
            assert_eq!(direct + binary_weight(i as u64) as i64, i as i64);
        }
    }
}
