use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by graph construction, decomposition, cut checks and searches.
///
/// Positions and symbols in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank {rank} out of range for n = {n} (expected 0 <= rank < {n}!)")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("k = {k} outside the admissible range 0..={max} for n = {n}")]
    Domain { n: usize, k: usize, max: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A guaranteed structural property failed to hold. This always signals a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
