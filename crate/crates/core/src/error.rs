use thiserror::Error;

use crate::combinatorics::IntegerPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} {requested} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("coefficient x^{index} requested but the series is only valid through x^{order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("series constant term is zero and cannot be inverted")]
    NotInvertible,
    #[error("composition argument must have zero constant term")]
    NotNilpotent,
    #[error("series is not monic (constant term must be 1)")]
    NotMonic,
    #[error("polynomial is not symmetric under permutation of variables")]
    NotSymmetric,
    #[error("{vars} variables cannot faithfully represent degree {degree}")]
    TooFewVariables { vars: usize, degree: usize },
    #[error("Chern vector key {key} does not have weight {dim}")]
    WrongWeight { key: IntegerPartition, dim: u32 },
    #[error("Chern vector is not realizable; the signature congruence only applies to manifolds")]
    NotRealizable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
