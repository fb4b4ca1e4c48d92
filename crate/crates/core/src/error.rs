use thiserror::Error;

use crate::splitbundle::SplitBundle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a split bundle needs at least one summand")]
    EmptyBundle,

    #[error("wedge power {n} exceeds rank {rank}")]
    WedgeExceedsRank { n: usize, rank: usize },

    #[error("{what}: expected rank {expected_rank} and degree {expected_degree}, got rank {rank} and degree {degree}")]
    RankDegree {
        what: &'static str,
        expected_rank: usize,
        expected_degree: i64,
        rank: usize,
        degree: i64,
    },

    #[error("{what}: expected rank {expected}, got {actual}")]
    Rank {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A cover class or genus the computation does not cover.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The set of tame bundles with a given minimal summand has no unique most generic member.
    #[error(
        "no unique most generic bundle for d={d}, g={g}, m={m}; maximal candidates {candidates:?}"
    )]
    NonUniqueGeneric {
        d: i64,
        g: i64,
        m: i64,
        candidates: Vec<SplitBundle>,
    },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("expected a binary cubic form")]
    NotCubic,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
