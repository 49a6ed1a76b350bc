//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong when constructing or interrogating the
/// combinatorial objects in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A sign vector must have at least one nonzero entry.
    #[error("the zero sign vector is not a projective sign vector")]
    ZeroVector,

    /// Character outside `+`, `-`, `0` while parsing.
    #[error("invalid sign character {0:?}")]
    BadSignChar(char),

    /// Parameters outside `0 <= l < n`.
    #[error("invalid parameters n={n}, l={l}: need 0 <= l < n")]
    InvalidParams { n: usize, l: usize },

    /// A block tuple violated one of its structural invariants.
    #[error("invalid block tuple: {0}")]
    InvalidBlocks(String),

    /// An operation that requires comparable elements got an incomparable pair.
    #[error("elements are not comparable")]
    NotComparable,

    /// An operation that requires a cover relation got a non-cover pair.
    #[error("not a cover relation")]
    NotACover,

    /// The operation is undefined for the poset family it was handed.
    #[error("operation not supported for family {0}: {1}")]
    UnsupportedFamily(&'static str, &'static str),

    /// A size guard refused to start an exhaustive computation.
    #[error("guard exceeded: {what} = {value} is over the limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// A maximal-chain key failed validation.
    #[error("malformed chain key: {0}")]
    BadChainKey(String),

    /// A rank subset handed to a flag-vector routine was out of range.
    #[error("invalid rank subset: {0}")]
    BadRankSet(String),

    /// Raw cover data handed to `GradedPoset::from_covers` was inconsistent.
    #[error("invalid poset data: {0}")]
    InvalidPoset(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
