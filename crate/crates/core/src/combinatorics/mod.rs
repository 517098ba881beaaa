//! Partitions, set partitions, Stirling and Bernoulli numbers, 2-adic valuation.

mod numbers;
mod partition;
mod set_partition;

pub use numbers::{
    bernoulli_unsigned, binary_weight, nu2, nu2_factorial, stirling2, Valuation,
};
pub use partition::{partitions, partitions_in_range, IntegerPartition};
pub use set_partition::{
    set_partition_sum, set_partitions, set_partitions_with_limit, BlockValue, SetPartition,
    SetPartitions,
};

use crate::rational::Rational;
use num_traits::{One, Zero};

impl BlockValue for Rational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}
