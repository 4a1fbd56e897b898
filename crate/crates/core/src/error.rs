use thiserror::Error;

use crate::lattice::GroupType;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("weight has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("not a lattice point: {0}")]
    Lattice(String),

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: GroupType, right: GroupType },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid substitution: {0}")]
    Map(String),

    #[error("polynomial is not Weyl invariant (fails under {generator})")]
    NotInvariant { generator: String },

    #[error("malformed basis context: {0}")]
    Context(String),

    #[error("basis has {got} elements, Weyl group order is {expected}")]
    Rank { expected: usize, got: usize },

    /// A self-check failed. Seeing this means there is a bug in the library.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// `true` for errors that signal a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
