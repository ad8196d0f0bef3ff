use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parts {0:?} do not form a partition (need weakly decreasing positive integers)")]
    NotAPartition(Vec<i64>),

    #[error("partition {lambda} is not in D_{n}")]
    NotInD { lambda: Partition, n: usize },

    #[error("partition {0} is not strict")]
    NotStrict(Partition),

    #[error("cannot prepend {a}^{d} to {nu}: largest part exceeds {a}")]
    Prepend { a: u32, d: usize, nu: Partition },

    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),

    #[error("x-variable expansion limited to {limit} variables, got {got}")]
    ExpansionGuard { limit: usize, got: usize },

    #[error("inexact division: {0}")]
    NotDivisible(String),

    #[error("basis expansion failed: {0}")]
    Basis(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed value contradicts an identity that must hold.
    #[error("identity falsified: {0}")]
    Falsified(String),
}
