use thiserror::Error;

/// Errors raised by the library.
///
/// Budget exhaustion is deliberately *not* an error: searches that run out of
/// budget report an inconclusive outcome through their return type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A circuit outside the domain of the circuit map.
    #[error("circuit outside the domain of f: {0}")]
    Domain(DomainExclusion),
}

/// Which exclusion set a rejected circuit belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DomainExclusion {
    /// The circuit touches the dual of a collapsing p-simplex.
    #[error("contains a collapsing p-vertex (C_L)")]
    CollapsingVertex,
    /// The circuit touches both duals of a mirror pair of (p+1)-simplices.
    #[error("contains a mirror pair of (p+1)-vertices (C_M)")]
    MirrorPair,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
