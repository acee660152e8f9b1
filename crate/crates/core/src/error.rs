use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simple type {letter}{rank}: {reason}")]
    InvalidType {
        letter: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("simple-root index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("{0:?} is not a root of this system")]
    NotARoot(Vec<i64>),

    #[error("Weyl-group enumeration exceeds the cap of {cap} elements")]
    EnumerationCap { cap: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("the one-parameter subgroup acts trivially on the variety")]
    TrivialAction,

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid Grassmannian model: {0}")]
    InvalidModel(String),

    #[error("family {family} does not apply to {kind} models{detail}")]
    FamilyMismatch {
        family: &'static str,
        kind: &'static str,
        detail: String,
    },

    #[error("no homogeneous realization: {0}")]
    NoRealization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
