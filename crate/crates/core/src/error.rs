use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle length n = {n} is below 3")]
    CycleTooSmall { n: u64 },

    #[error("n = {n} exceeds the supported maximum {max}")]
    CycleTooLarge { n: u64, max: u64 },

    #[error("k = {k} exceeds the supported maximum {max}")]
    LevelTooLarge { k: u64, max: u64 },

    #[error("k = {k} is below the diameter {d} of C_{n}")]
    LevelBelowDiameter { n: u64, k: u64, d: u64 },

    #[error("{what} = {value} is out of range for modulus {n}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        n: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed labeling: {0}")]
    MalformedLabeling(String),

    #[error("({n}, {k}) does not satisfy the preconditions of {case}")]
    Precondition { case: &'static str, n: u64, k: u64 },

    #[error("construction {case} failed self-validation on ({n}, {k}): {reason}; schedule = [{schedule}]")]
    ConstructionIntegrity {
        case: &'static str,
        n: u64,
        k: u64,
        reason: String,
        schedule: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
