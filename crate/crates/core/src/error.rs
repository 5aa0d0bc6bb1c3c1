use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group order exceeds bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not a Sylow {p}-subgroup")]
    NotSylow { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("fusion system is not saturated")]
    NotSaturated,
    #[error("subgroup is not fully K-normalized")]
    NotFullyKNormalized,
    #[error("subgroup is not central in the fusion system")]
    NotCentral,
    #[error("intersection with S is not a Sylow subgroup of the normal subgroup")]
    NotSylowInN,
    #[error("word is not in the domain")]
    NotInDomain,
    #[error("subgroup is not an object")]
    NotAnObject,
    #[error("not a partial normal subgroup: {0}")]
    NotPartialNormal(String),
    #[error("object set is not closed: {0}")]
    NotClosed(String),
    #[error("object set mismatch: {0}")]
    ObjectSetMismatch(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
