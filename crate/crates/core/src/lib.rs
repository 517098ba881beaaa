//! Exact Chern-number calculus for stably almost-complex manifolds.
//!
//! The crate computes the coefficients `b^(k)_λ` of `ch(γ^k)` in Chern classes
//! (closed set-partition formula, checked against a brute-force symmetric-function
//! oracle), complex-genus coefficients `h_λ` such as those of the signature and Todd
//! genus, the Hattori–Stong integrality functionals, and the parity results for
//! signatures built on top of them. All arithmetic is exact.

pub mod acceptance;
pub mod applications;
pub mod chern;
pub mod combinatorics;
pub mod error;
pub mod genus;
pub mod hattori_stong;
pub mod rational;
pub mod series;
pub mod symfunc;

pub use chern::{ChernVector, LinearFunctional};
pub use combinatorics::IntegerPartition;
pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{PowerSeries, TPolynomial};

/// Largest `n` for which `Π_n` may be enumerated (Bell(12) ≈ 4.2 million).
pub const DEFAULT_SET_PARTITION_LIMIT: usize = 12;

/// Largest complex dimension accepted by the integrality machinery.
pub const DEFAULT_DIMENSION_LIMIT: u32 = 8;

/// Size guards shared by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub set_partition: usize,
    pub dimension: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            set_partition: DEFAULT_SET_PARTITION_LIMIT,
            dimension: DEFAULT_DIMENSION_LIMIT,
        }
    }
}

impl Limits {
    pub fn with_dimension(dimension: u32) -> Self {
        Self {
            dimension,
            set_partition: DEFAULT_SET_PARTITION_LIMIT.max(dimension as usize),
        }
    }

    pub(crate) fn check_dimension(&self, n: u32) -> Result<()> {
        if n > self.dimension {
            return Err(Error::LimitExceeded {
                what: "complex dimension",
                requested: n as usize,
                limit: self.dimension as usize,
            });
        }
        Ok(())
    }
}
