use thiserror::Error;

use crate::graph::{ValidationReport, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("malformed graph file at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown bond `{0}`")]
    UnknownBond(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The effective-size-from-eigenvalues route needs equal edge lengths.
    #[error(
        "effective size from the eigenvalues of S requires an equilateral graph; \
         use the degree of the orbit-expansion condition instead"
    )]
    NotEquilateral,

    #[error(
        "edge lengths are not all exact rationals, so the condition has no exact \
         exponential-polynomial form; evaluate the determinant numerically instead"
    )]
    InexactLengths,

    #[error("term length {0} is not an integer multiple of the base length {1}")]
    Incommensurable(String, String),

    #[error(
        "more than {cap} irreducible pseudo orbits; use the determinant route \
         (evaluate) or raise the cap with QGRAPH_ORBIT_CAP"
    )]
    OrbitCapExceeded { cap: usize },

    #[error("orbit digraph has {0} nodes; at most 128 are supported")]
    TooManyBonds(usize),

    #[error("ghost reduction requires {0}")]
    GhostPrecondition(String),

    #[error("no resonances (trivial condition)")]
    TrivialCondition,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that mark a capability boundary of the requested route rather
    /// than bad input.
    pub fn is_capability(&self) -> bool {
        matches!(
            self,
            Error::NotEquilateral
                | Error::InexactLengths
                | Error::Incommensurable(..)
                | Error::OrbitCapExceeded { .. }
                | Error::TooManyBonds(_)
                | Error::TrivialCondition
        )
    }
}
